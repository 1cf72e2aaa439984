/* C interface to the codim1 core. Opaque handles plus integer status codes;
 * every function returns C1_OK or an error code, with a thread-local message
 * available from c1_last_error(). Handles must be released with the matching
 * _free call. */
#ifndef CODIM1_C_API_H
#define CODIM1_C_API_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    C1_OK = 0,
    C1_ERR_INVALID_ARGUMENT = 1,
    C1_ERR_IO = 2,
    C1_ERR_DOMAIN = 3,
    C1_ERR_INTERNAL = 4
} c1_status;

typedef struct c1_space_s c1_space;
typedef struct c1_cover_s c1_cover;
typedef struct c1_complex_s c1_complex;

/* Message for the most recent failure on this thread. */
const char* c1_last_error(void);

/* Worker threads for internal builders; results never depend on it. */
void c1_set_threads(int n);

/* --- spaces ------------------------------------------------------------- */

/* kind: sphere | circle | torus | dumbbell_surface | interval_test */
c1_status c1_space_generate(const char* kind, const double* params, int n_params,
                            int sample_count, unsigned long long seed, c1_space** out);
c1_status c1_space_load(const char* path, c1_space** out);
c1_status c1_space_save(const c1_space* space, const char* path);
void c1_space_free(c1_space* space);

int c1_space_size(const c1_space* space);
int c1_space_manifold_dim(const c1_space* space);
double c1_space_graph_scale(const c1_space* space);
double c1_space_diameter(const c1_space* space);
double c1_space_density(const c1_space* space);

c1_status c1_space_distance(const c1_space* space, int i, int j, double* out);
c1_status c1_graph_geodesic(const c1_space* space, int i, int j, double* out);
c1_status c1_estimate_doubling(const c1_space* space, int trials,
                               unsigned long long seed, int* out);

/* --- nets and covers ----------------------------------------------------- */

/* Greedy maximal separated net. Two-call idiom: pass buf = NULL to query the
 * center count in *n_out, then call again with a buffer of that capacity. */
c1_status c1_net_build(const c1_space* space, double sep, int* buf, int capacity,
                       int* n_out);

typedef struct {
    int element_count;
    int multiplicity;
    double epsilon;
    double radius;
    double lebesgue;          /* certified value (epsilon/4) */
    double lebesgue_audited;  /* exact audited supremum on the sample */
    double delta;
    double max_diameter;
} c1_cover_stats;

c1_status c1_cover_build(const c1_space* space, double epsilon, c1_cover** out);
void c1_cover_free(c1_cover* cover);
c1_status c1_cover_get_stats(const c1_cover* cover, c1_cover_stats* out);
c1_status c1_cover_centers(const c1_cover* cover, int* buf, int capacity, int* n_out);

/* --- nerve and homology --------------------------------------------------- */

c1_status c1_nerve_build(const c1_cover* cover, c1_complex** out);
c1_status c1_complex_load_json(const char* path, c1_complex** out);
c1_status c1_complex_save_json(const c1_complex* complex, const char* path);
void c1_complex_free(c1_complex* complex);

int c1_complex_dim(const c1_complex* complex);
long long c1_complex_count(const c1_complex* complex, int dim); /* dim < 0: all */
c1_status c1_complex_betti(const c1_complex* complex, int k, int* out);

/* --- measures and separation --------------------------------------------- */

typedef struct {
    double value;
    double spread;
    double scale;
    int k;
} c1_measure;

c1_status c1_hausdorff_estimate(const c1_space* space, const int* indices, int n,
                                double scale, int k, c1_measure* out);

typedef struct {
    int components;
    double seprad;
    int witness_x;
    int witness_y;
} c1_separation;

c1_status c1_separation_radius(const c1_space* space, const int* indices, int n,
                               double scale, c1_separation* out);
c1_status c1_separation_witness(const c1_space* space, const int* indices, int n,
                                double witness_scale, double band_scale, int* betti_out);

/* Builds a named set family member (latitude | level_set | neck_loop | arc)
 * at parameter `value`; scale 0 picks the automatic band width, reported in
 * *scale_used. Two-call idiom as above. */
c1_status c1_select_family(const c1_space* space, const char* family, double value,
                           double scale, int* buf, int capacity, int* n_out,
                           double* scale_used);

/* --- skeleton projection -------------------------------------------------- */

/* Runs the skeleton projection on serialized inputs: a codim1-nerve/1 complex
 * and a codim1-bset/1 sample set. Writes image_set.json, projection_log.json
 * and projection_log.csv under out_dir. */
c1_status c1_project_file(const char* complex_json_path, const char* set_json_path,
                          int k, const char* out_dir);

/* --- experiments ---------------------------------------------------------- */

/* name: verify-iso | verify-vol | dumbbell | pipeline. Overrides may be NULL
 * (resolution) or negative (seed) to keep the config values. Writes
 * report.json, tables/ and plots/ under the output directory; *passed_out is
 * 1 iff every asserted invariant held. */
c1_status c1_run_experiment(const char* name, const char* config_path,
                            const char* out_dir_override, long long seed_override,
                            const char* resolution_override, int threads,
                            int* passed_out);

#ifdef __cplusplus
}
#endif

#endif /* CODIM1_C_API_H */
