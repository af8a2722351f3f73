#include <stdio.h>
#include <string.h>
#include "torsieve.h"

#define CHECK(x) do { if (!(x)) { fprintf(stderr, "failed: %s\n", #x); return 1; } } while (0)

int main(void) {
    uint64_t m = 0;
    CHECK(ts_mprime(2, &m) == TS_STATUS_OK && m == 48);
    CHECK(ts_mprime(0, &m) == TS_STATUS_DOMAIN);
    CHECK(ts_last_error() != NULL);

    char *s = NULL;
    CHECK(ts_mprime_string(4, &s) == TS_STATUS_OK);
    CHECK(strcmp(s, "23040 = 2^9 \xc2\xb7 3^2 \xc2\xb7 5") == 0);
    ts_string_free(s);

    TsAnalysis *a = NULL;
    CHECK(ts_analysis_new(4, 0, false, &a) == TS_STATUS_OK);
    CHECK(ts_analysis_survivor_count(a) == 5);
    uint64_t e, mq, mod, res;
    CHECK(ts_analysis_survivor(a, 0, &e, &mq, &mod, &res) == TS_STATUS_OK);
    CHECK(mod % mq == 0 && (res - 1) % mq == 0);
    CHECK(ts_analysis_survivor(a, 99, &e, &mq, &mod, &res) == TS_STATUS_RANGE);
    ts_analysis_free(a);

    int64_t c[] = {1, 0, 2};
    TsPolynomial *p = NULL, *p4 = NULL;
    CHECK(ts_poly_new(c, 3, &p) == TS_STATUS_OK);
    CHECK(ts_poly_power_charpoly(p, 4, &p4) == TS_STATUS_OK);
    int64_t c0 = 0;
    CHECK(ts_poly_coeff(p4, 0, &c0) == TS_STATUS_OK && c0 == 16);
    ts_poly_free(p4);
    ts_poly_free(p);

    double w = 0.0;
    CHECK(ts_lambert_w_m1(-0.25, &w) == TS_STATUS_OK && w < -2.15 && w > -2.16);
    CHECK(ts_lambert_w_m1(0.5, &w) == TS_STATUS_DOMAIN);
    printf("ok\n");
    return 0;
}
