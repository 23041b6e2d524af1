#include <stdio.h>
#include <string.h>
#include "ydouble.h"

int main(void) {
    const char *cfg =
        "{\"backend\": \"exact\", \"checks\": [\"heis\", \"pairing\"],"
        " \"cutoffs\": {\"e_max\": 2, \"m_bound\": 2, \"u_lo\": -4, \"u_hi\": 2,"
        "               \"margin\": 0, \"k_lo\": -1, \"k_hi\": 1, \"h_depth\": 3,"
        "               \"gamma_degree\": 1},"
        " \"jobs\": 1, \"seed\": 5}";
    char *msg = NULL;
    if (yd_config_check(cfg, &msg) != YD_STATUS_OK) {
        fprintf(stderr, "config rejected: %s\n", msg ? msg : "?");
        return 1;
    }
    YdSession *s = yd_session_new(cfg);
    if (!s) return 2;
    YdStatus rc = yd_session_run(s);
    const char *report = yd_session_report(s);
    int ok = rc == YD_STATUS_OK && report && strstr(report, "\"schema\": 1")
             && strstr(report, "pairing");
    printf("capi smoke: rc=%d report_len=%zu ok=%d\n", (int)rc,
           report ? strlen(report) : 0, ok);
    yd_session_free(s);
    char *cat = yd_catalog_json();
    int ok2 = cat && strstr(cat, "ef-delta") != NULL;
    yd_string_free(cat);
    printf("catalog ok=%d\n", ok2);
    return (ok && ok2) ? 0 : 3;
}
