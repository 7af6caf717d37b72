/* Build: cargo build -p surgeon-ffi, then
 * cc -I crates/ffi/include crates/ffi/examples/smoke.c target/debug/libsurgeon_ffi.a -lm -lpthread -ldl
 */
#include <stdio.h>

#include "surgeon.h"

int main(void) {
    SurgeonDiagram *d = NULL;
    if (surgeon_diagram_parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", &d) != SURGEON_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", surgeon_last_error());
        return 1;
    }
    char *poly = NULL;
    if (surgeon_diagram_alexander(d, &poly) != SURGEON_STATUS_OK) {
        fprintf(stderr, "alexander: %s\n", surgeon_last_error());
        return 1;
    }
    printf("%s: trefoil alexander %s\n", surgeon_version(), poly);
    surgeon_string_free(poly);
    surgeon_diagram_free(d);

    SurgeonPresentation *p = NULL;
    bool sphere = false;
    if (surgeon_family_surgered_presentation(3, -1, &p) != SURGEON_STATUS_OK
        || surgeon_presentation_is_homology_sphere(p, &sphere) != SURGEON_STATUS_OK) {
        fprintf(stderr, "family: %s\n", surgeon_last_error());
        return 1;
    }
    printf("k_-1^3 surgery is a homology sphere: %s\n", sphere ? "yes" : "no");
    surgeon_presentation_free(p);

    char *slope = NULL;
    if (surgeon_cable_reduce("5/1", 2, 1, &slope) != SURGEON_STATUS_DOMAIN) {
        return 1;
    }
    printf("expected failure: %s\n", surgeon_last_error());
    return 0;
}
