#include <stdio.h>
#include <string.h>

#include "plausible.h"

#define CHECK(cond)                                               \
    do {                                                          \
        if (!(cond)) {                                            \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);    \
            return 1;                                             \
        }                                                         \
    } while (0)

int main(void) {
    PlausibleFormula *f = NULL;
    CHECK(plausible_formula_parse("p0 -> []p0", &f) == PLAUSIBLE_STATUS_OK);

    char *rendered = NULL;
    CHECK(plausible_formula_render(f, &rendered) == PLAUSIBLE_STATUS_OK);
    CHECK(strcmp(rendered, "p0 -> []p0") == 0);
    plausible_string_free(rendered);

    PlausibleModel *m = NULL;
    const char *json = "{\"worlds\":2,\"S\":{\"0\":[[0,1]],\"1\":[[0,1]]},\"V\":{\"p0\":[0]}}";
    CHECK(plausible_model_from_json(json, &m) == PLAUSIBLE_STATUS_OK);
    bool value = true;
    CHECK(plausible_model_eval(m, 0, f, &value) == PLAUSIBLE_STATUS_OK);
    CHECK(!value);
    CHECK(plausible_model_eval(m, 7, f, &value) == PLAUSIBLE_STATUS_EVAL);
    CHECK(plausible_last_error() != NULL);

    bool found = false;
    char *report = NULL;
    CHECK(plausible_find_countermodel(f, "constrained", 2, &found, &report) == PLAUSIBLE_STATUS_OK);
    CHECK(found);
    CHECK(strstr(report, "\"CountermodelFound\"") != NULL);
    plausible_string_free(report);

    PlausibleFormula *bad = NULL;
    CHECK(plausible_formula_parse("p0 ->", &bad) == PLAUSIBLE_STATUS_PARSE);
    CHECK(bad == NULL);

    plausible_model_free(m);
    plausible_formula_free(f);
    printf("ok %s\n", plausible_version());
    return 0;
}
