#include <stdio.h>
#include <string.h>

#include "qchar.h"

static int check(int cond, const char *what) {
    if (!cond) {
        fprintf(stderr, "failed: %s\n", what);
    }
    return cond ? 0 : 1;
}

int main(void) {
    int bad = 0;
    QcharAlgebra *c3 = NULL;
    bad += check(qchar_algebra_new("C3", &c3) == QCHAR_STATUS_OK, "algebra");
    bad += check(qchar_algebra_rank(c3) == 3, "rank");

    QcharResult *res = NULL;
    QcharStatus st = qchar_run(c3, "Y[1,4] Y[2,1] Y[3,-2]", QCHAR_MODE_PLAIN, NULL, &res);
    bad += check(st == QCHAR_STATUS_FM_FAILED, "plain run fails");
    bad += check(strstr(qchar_result_json(res), "\"status\": \"failed\"") != NULL, "json status");
    qchar_result_free(res);

    QcharLimits limits = qchar_limits_default();
    st = qchar_run(c3, "Y[1,4] Y[2,1] Y[3,-2]", QCHAR_MODE_MODIFIED, &limits, &res);
    bad += check(st == QCHAR_STATUS_OK, "modified run completes");
    bad += check(qchar_result_total(res) == 896, "total");
    qchar_result_free(res);

    st = qchar_run(c3, "Y[9,0]", QCHAR_MODE_PLAIN, NULL, &res);
    bad += check(st == QCHAR_STATUS_INVALID_INPUT, "node out of range");
    bad += check(qchar_last_error() != NULL, "error message");
    qchar_result_free(res);

    qchar_algebra_free(c3);
    if (bad == 0) {
        printf("ok\n");
    }
    return bad;
}
