#include <stdio.h>
#include <string.h>
#include "polytract.h"

int main(void) {
    PtSet *s = NULL;
    if (pt_set_from_json("{\"n\":2,\"r\":2,\"bases\":[[0,2],[1,1],[2,0]]}", &s) != PT_STATUS_OK) return 1;
    size_t tau = 0;
    if (pt_set_tutte_rank(s, &tau) != PT_STATUS_OK || tau != 2) return 2;
    char *text = NULL;
    if (pt_set_to_json(s, &text) != PT_STATUS_OK) return 3;
    printf("%s\n", text);
    pt_string_free(text);
    pt_set_free(s);
    if (pt_set_from_json("[", &s) != PT_STATUS_MALFORMED || pt_last_error() == NULL) return 4;
    int64_t l[] = {2, 1}, m[] = {2, 1}, n[] = {3, 2, 1};
    uint64_t lr = 0;
    if (pt_lr_coefficient(l, 2, m, 2, n, 3, 3, &lr) != PT_STATUS_OK || lr != 2) return 5;
    return 0;
}
