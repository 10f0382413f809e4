#include <stdio.h>
#include "lnd.h"

int main(void) {
    LndContext *ctx = NULL;
    LndPoly *f = NULL, *z = NULL;
    LndDerivation *d = NULL;
    const char *vars[] = {"X", "Y", "Z"};
    const char *images[] = {"t", "X", "Y"};
    uint32_t n = 0;

    if (lnd_context_new("t", "X, Y, Z", NULL, &ctx) != LND_STATUS_OK ||
        lnd_derivation_new(ctx, vars, images, 3, &d) != LND_STATUS_OK ||
        lnd_poly_parse(ctx, "Z", &z) != LND_STATUS_OK) {
        fprintf(stderr, "error: %s\n", lnd_last_error());
        return 2;
    }
    lnd_derivation_nilpotency_index(d, z, 128, &n);
    printf("nilpotency index of Z: %u\n", n);

    if (lnd_poly_parse(ctx, "X +* Y", &f) != LND_STATUS_OK)
        printf("parse error: %s\n", lnd_last_error());

    lnd_poly_free(z);
    lnd_derivation_free(d);
    lnd_context_free(ctx);
    return n == 3 ? 0 : 1;
}
