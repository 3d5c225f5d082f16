#include <math.h>
#include <stdio.h>
#include <string.h>

#include "fourier_jacobi.h"

int main(void) {
    FjtParams *p = NULL;
    if (fjt_params_new(0.75, 1.2, &p) != FJT_STATUS_OK) return 1;

    double f = 0.0;
    if (fjt_forward_kernel(p, 2, 0.0, &f) != FJT_STATUS_OK || f != 1.0) return 2;

    double phi = 0.0;
    if (fjt_phi_kernel(p, 1, 1.0, 1e-12, 1e-14, &phi) != FJT_STATUS_OK || !isfinite(phi)) return 3;

    FjtSequence *s = NULL;
    if (fjt_sequence_default(p, 4, &s) != FJT_STATUS_OK || fjt_sequence_len(s) != 4) return 4;
    double a[4];
    fjt_sequence_values(s, a, 4);
    double got = 0.0;
    if (fjt_invert_synthesized(s, 1, 1e-10, 1e-12, &got) != FJT_STATUS_OK || fabs(got - a[0]) > 1e-8) return 5;

    FjtParams *bad = NULL;
    if (fjt_params_new(-1.0, 1.0, &bad) != FJT_STATUS_REGIME || bad != NULL) return 6;
    if (strlen(fjt_last_error_message()) == 0) return 7;

    fjt_sequence_free(s);
    fjt_params_free(p);
    printf("ok %s\n", fjt_version());
    return 0;
}
