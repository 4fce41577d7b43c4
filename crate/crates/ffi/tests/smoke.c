#include <stdio.h>
#include <string.h>
#include "bvsaito.h"

int main(void) {
    const char *spec = "variables = [\"x1\", \"x2\"]\nweights = [\"1/3\", \"2/9\"]\nf = \"x1^3 + x1*x2^3\"\n";
    BvSession *s = NULL;
    char *err = NULL;
    if (bv_session_new(spec, &s, &err) != BV_STATUS_OK) {
        fprintf(stderr, "%s\n", err);
        return 1;
    }
    printf("mu=%zu\n", bv_session_mu(s));
    char *out = NULL;
    BvStatus st = bv_run(s, "trivialize", "x1^3", NULL, -1, &out);
    printf("status=%d\n", (int)st);
    if (out == NULL || strstr(out, "x1^3 + (2/9)*z") == NULL) {
        return 2;
    }
    bv_string_free(out);
    bv_session_free(s);
    return 0;
}
