#ifndef DDGEOM_H
#define DDGEOM_H

/* C interface to the ddgeom library.
 *
 * Conventions:
 *   - Functions returning a pointer return NULL on failure.
 *   - Functions returning int return 0 on success, -1 on failure.
 *   - After a failure, ddg_last_error() describes the problem for the
 *     calling thread.
 *   - Strings returned as char* are owned by the caller; release them with
 *     ddg_free_string(). Handles are released with their _free function.
 *   - Structured data crosses the boundary as JSON text. Rational numbers
 *     are "num/den" strings; floating point appears only under keys with
 *     an "_approx" suffix.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ddg_config ddg_config;       /* planar point configuration */
typedef struct ddg_lines ddg_lines;         /* family of lines in R^3 */
typedef struct ddg_richmap ddg_richmap;     /* rich-point map of a family */
typedef struct ddg_points3 ddg_points3;     /* point set in R^3 */
typedef struct ddg_partition ddg_partition; /* polynomial cell partition */

const char* ddg_version(void);
const char* ddg_last_error(void);
void ddg_free_string(char* text);

/* --- planar configurations ------------------------------------------- */

/* JSON: {"points": [["x", "y"], ...]} with pairwise distinct points. */
ddg_config* ddg_config_parse(const char* json_text);
void ddg_config_free(ddg_config* config);
long ddg_config_size(const ddg_config* config);
char* ddg_config_to_json(const ddg_config* config);

/* --- line families ---------------------------------------------------- */

/* JSON: [{"base": ["x","y","z"], "dir": ["x","y","z"]}, ...] */
ddg_lines* ddg_lines_parse(const char* json_text);
void ddg_lines_free(ddg_lines* lines);
long ddg_lines_size(const ddg_lines* lines);
char* ddg_lines_to_json(const ddg_lines* lines);

/* The N^2-line family encoding all ordered point pairs of the config. */
ddg_lines* ddg_lines_from_config(const ddg_config* config);

/* Deterministic instance generation. The spec is a JSON object
 * {"kind": ..., "n": ..., "seed": ..., ...}; kinds grid2d, random2d and
 * collinear2d yield a config, kinds es-from-config, random-lines3d,
 * coplanar-lines, pencil and regulus-rulings yield lines. Requesting the
 * wrong shape for a kind is an error. */
ddg_config* ddg_generate_config(const char* spec_json);
ddg_lines* ddg_generate_lines(const char* spec_json);

/* --- rich points ------------------------------------------------------ */

/* All-pairs exact intersection analysis; workers <= 1 runs single
 * threaded. */
ddg_richmap* ddg_rich_points(const ddg_lines* lines, int workers);
void ddg_richmap_free(ddg_richmap* map);

/* {"total_lines", "intersecting_pairs", "rich_points", "histogram",
 *  "cumulative"} */
char* ddg_richmap_report(const ddg_richmap* map);

/* Number of points lying on at least r lines (r >= 2). -1 on error. */
long ddg_richmap_count_at_least(const ddg_richmap* map, long r);

/* The points on at least r lines, as a JSON point array. */
char* ddg_richmap_points_at_least(const ddg_richmap* map, long r);

/* Checks |P_r| <= 2L/r; requires r > 2*sqrt(L). */
char* ddg_verify_bigr(const ddg_richmap* map, long r);

/* Measures the best constant in |P_r| <= C (L^2 r^-3 + L r^-1). */
char* ddg_verify_szt(const ddg_richmap* map);

/* --- quadruple census and distance bound ------------------------------ */

/* bruteforce != 0 enumerates all N^4 quadruples (N <= 40); otherwise the
 * census is derived from the rich points of the line family. */
char* ddg_quadruple_census(const ddg_config* config, int bruteforce,
                           int workers);

/* Distinct squared distances and the quadruple lower bound; N >= 3. */
char* ddg_dd_bound(const ddg_config* config, int workers);

/* --- polynomial partitioning ------------------------------------------ */

/* JSON: {"points": [["x","y","z"], ...]} */
ddg_points3* ddg_points3_parse(const char* json_text);
void ddg_points3_free(ddg_points3* points);
long ddg_points3_size(const ddg_points3* points);
char* ddg_points3_to_json(const ddg_points3* points);

/* Lift a planar configuration into z = 0. */
ddg_points3* ddg_points3_from_config(const ddg_config* config);

/* backend "planes": product of <= degree affine planes, greedy max-cell
 * bisection, max cell <= 2|S|/degree guaranteed. backend "lifted":
 * simultaneous bisection rounds through monomial lifts; per-cell quality
 * measured, not guaranteed. */
ddg_partition* ddg_partition_points(const ddg_points3* points,
                                    const char* backend, int degree,
                                    unsigned long long seed);
void ddg_partition_free(ddg_partition* partition);

/* Re-checks every sign from scratch against the given point set and
 * reports {"backend", "degree_budget", "factors", "cells", "boundary",
 * "max_cell", "cells_over_d3", "maxcell_ratio", ...}. */
char* ddg_partition_report(const ddg_partition* partition,
                           const ddg_points3* points);

/* Cells met by each line: {"per_line", "total_incidences",
 * "max_cells_met", "incidence_budget", ...}. Lines inside the zero set
 * are flagged and meet no cell. */
char* ddg_line_cell_incidence(const ddg_lines* lines,
                              const ddg_partition* partition);

#ifdef __cplusplus
}
#endif

#endif /* DDGEOM_H */
