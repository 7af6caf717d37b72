#ifndef SURGEON_H
#define SURGEON_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of a fallible call.
typedef enum SurgeonStatus {
  SURGEON_STATUS_OK = 0,
  // A required pointer argument was null.
  SURGEON_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  SURGEON_STATUS_INVALID_UTF8 = 2,
  // A PD code, slope or cable string could not be parsed.
  SURGEON_STATUS_PARSE = 3,
  // The input was well formed but the operation does not apply to it.
  SURGEON_STATUS_DOMAIN = 4,
  // The library panicked; this is a bug.
  SURGEON_STATUS_INTERNAL = 5,
} SurgeonStatus;

// Opaque oriented link diagram.
typedef struct SurgeonDiagram SurgeonDiagram;

// Opaque surgery presentation.
typedef struct SurgeonPresentation SurgeonPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static NUL-terminated string.
const char *surgeon_version(void);

// Message of the last failed call on this thread, or null. Valid until the
// next call into the library on this thread.
const char *surgeon_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` is null or a string from this library not yet released.
void surgeon_string_free(char *s);

// Parses a PD code such as `X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]`.
//
// # Safety
// `pd` is a NUL-terminated string; `out` is writable.
enum SurgeonStatus surgeon_diagram_parse_pd(const char *pd, struct SurgeonDiagram **out);

// Diagram of the family knot `k_n^m`.
//
// # Safety
// `out` is writable.
enum SurgeonStatus surgeon_family_knot_diagram(int64_t m, int64_t n, struct SurgeonDiagram **out);

// Releases a diagram. Null is ignored.
//
// # Safety
// `d` is null or a live diagram handle.
void surgeon_diagram_free(struct SurgeonDiagram *d);

// # Safety
// `d` is a live diagram handle; `out` is writable.
enum SurgeonStatus surgeon_diagram_num_components(const struct SurgeonDiagram *d, size_t *out);

// # Safety
// `d` is a live diagram handle; `out` is writable.
enum SurgeonStatus surgeon_diagram_num_crossings(const struct SurgeonDiagram *d, size_t *out);

// Linking number of components `i` and `j` (0-based).
//
// # Safety
// `d` is a live diagram handle; `out` is writable.
enum SurgeonStatus surgeon_diagram_linking_number(const struct SurgeonDiagram *d,
                                                  size_t i,
                                                  size_t j,
                                                  int64_t *out);

// Canonical PD code; release with [`surgeon_string_free`].
//
// # Safety
// `d` is a live diagram handle; `out` is writable.
enum SurgeonStatus surgeon_diagram_to_pd(const struct SurgeonDiagram *d, char **out);

// Normalized Alexander polynomial of a knot, e.g. `t - 1 + t^-1`; release
// with [`surgeon_string_free`].
//
// # Safety
// `d` is a live diagram handle; `out` is writable.
enum SurgeonStatus surgeon_diagram_alexander(const struct SurgeonDiagram *d, char **out);

// Knot determinant `|Δ(-1)|` in decimal; release with
// [`surgeon_string_free`].
//
// # Safety
// `d` is a live diagram handle; `out` is writable.
enum SurgeonStatus surgeon_diagram_determinant(const struct SurgeonDiagram *d, char **out);

// Surgery presentation on a copy of `d` with comma-separated slopes
// (`p/q`, `*` unfilled, `1/0` meridional), one per component.
//
// # Safety
// `d` is a live diagram handle; `slopes` is a NUL-terminated string; `out`
// is writable.
enum SurgeonStatus surgeon_presentation_from_diagram(const struct SurgeonDiagram *d,
                                                     const char *slopes,
                                                     struct SurgeonPresentation **out);

// The closed manifold obtained by `n`-surgery on `k_n^m`.
//
// # Safety
// `out` is writable.
enum SurgeonStatus surgeon_family_surgered_presentation(int64_t m,
                                                        int64_t n,
                                                        struct SurgeonPresentation **out);

// Releases a presentation. Null is ignored.
//
// # Safety
// `p` is null or a live presentation handle.
void surgeon_presentation_free(struct SurgeonPresentation *p);

// First homology of the surgered manifold, e.g. `Z/2` or `trivial`;
// release with [`surgeon_string_free`].
//
// # Safety
// `p` is a live presentation handle; `out` is writable.
enum SurgeonStatus surgeon_presentation_first_homology(const struct SurgeonPresentation *p,
                                                       char **out);

// # Safety
// `p` is a live presentation handle; `out` is writable.
enum SurgeonStatus surgeon_presentation_is_homology_sphere(const struct SurgeonPresentation *p,
                                                           bool *out);

// Rolfsen twist with `t` full twists on component `c`; the result is a
// new handle.
//
// # Safety
// `p` is a live presentation handle; `out` is writable.
enum SurgeonStatus surgeon_presentation_rolfsen_twist(const struct SurgeonPresentation *p,
                                                      size_t c,
                                                      int64_t t,
                                                      struct SurgeonPresentation **out);

// Presentation as JSON without the diagram; release with
// [`surgeon_string_free`].
//
// # Safety
// `p` is a live presentation handle; `out` is writable.
enum SurgeonStatus surgeon_presentation_to_json(const struct SurgeonPresentation *p, char **out);

// Slope induced on `k_n^m` by the family's surgery description, as `p/q`;
// release with [`surgeon_string_free`].
//
// # Safety
// `out` is writable.
enum SurgeonStatus surgeon_family_induced_slope(int64_t m, int64_t n, char **out);

// Companion slope for surgery along `slope` on the `(a,b)`-cable; release
// with [`surgeon_string_free`].
//
// # Safety
// `slope` is a NUL-terminated string; `out` is writable.
enum SurgeonStatus surgeon_cable_reduce(const char *slope, int64_t a, int64_t b, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SURGEON_H */
