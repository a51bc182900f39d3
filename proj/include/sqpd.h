/* sqpd: squeezed-light driven plasmon / quantum-dot entanglement simulator.
 *
 * C interface to the simulation core. All objects are opaque handles owned by
 * the library; every fallible call returns an sqpd_status, with a
 * human-readable message available from sqpd_last_error() (thread-local).
 */
#ifndef SQPD_H
#define SQPD_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqpd_status {
    SQPD_OK = 0,
    SQPD_ERR_CONFIG = 1,       /* bad parameters, config file or arguments */
    SQPD_ERR_INTEGRATION = 2,  /* integration-quality failure */
    SQPD_ERR_CONVERGENCE = 3,  /* truncation convergence failure */
    SQPD_ERR_INTERNAL = 4,
} sqpd_status;

typedef struct sqpd_params sqpd_params; /* parameter overrides over defaults */
typedef struct sqpd_run sqpd_run;       /* finished scenario run */
typedef struct sqpd_sweep sqpd_sweep;   /* finished parameter sweep */

const char* sqpd_version(void);
/* Message describing the most recent failure on this thread. */
const char* sqpd_last_error(void);

/* ---- parameters ------------------------------------------------------- */

/* New handle holding the built-in defaults (typical operating point). */
sqpd_params* sqpd_params_create(void);
void sqpd_params_free(sqpd_params* p);

/* Keys carry their unit as a suffix: g_ab_mev, g_bc_mev, delta_g_bc_mev,
 * g_ac_mev, gamma_a_mev, gamma_b_mev, gamma_c_mev, epsilon_mev, delta_a_mev,
 * delta_b_mev, delta_c_mev, omega0_ev, squeeze_r, squeeze_theta_rad, n_ph,
 * n_pl, num_pn, t_end_fs, dt_out_fs. */
sqpd_status sqpd_params_set(sqpd_params* p, const char* key, double value);
sqpd_status sqpd_params_get(const sqpd_params* p, const char* key, double* value);

/* Merge a key = value config file; collects every violation into the error
 * message. */
sqpd_status sqpd_params_load_file(sqpd_params* p, const char* path);

/* ---- scenarios -------------------------------------------------------- */

/* scenario: pulse | pulse-reduced | pump | damping-study | epsilon-study |
 *           two-pn | mismatch | detuning-study
 * outdir: directory for CSV + manifest output, or NULL for none. */
sqpd_status sqpd_scenario_run(const sqpd_params* p, const char* scenario,
                              const char* outdir, int parallelism, sqpd_run** out);
void sqpd_run_free(sqpd_run* r);

/* Number of trajectories in the run (studies produce several variants). */
int sqpd_run_count(const sqpd_run* r);
const char* sqpd_run_name(const sqpd_run* r, int traj);
long sqpd_run_samples(const sqpd_run* r, int traj);

/* Copy the sampled series into caller arrays of length sqpd_run_samples().
 * Any destination pointer may be NULL to skip that column. */
sqpd_status sqpd_run_series(const sqpd_run* r, int traj, double* t_fs, double* p_b1,
                            double* p_b2, double* p_b3, double* p_b4, double* d,
                            double* concurrence, double* trace_err, double* min_eig);

double sqpd_run_peak_concurrence(const sqpd_run* r, int traj);
double sqpd_run_peak_time_fs(const sqpd_run* r, int traj);
double sqpd_run_steady_concurrence(const sqpd_run* r, int traj);

/* ---- parameter sweeps -------------------------------------------------- */

/* Axis specs are "name:lo:hi:count", e.g. "g_ab:0:200:31". Pass csv_path to
 * write the grid incrementally; with resume nonzero, completed rows of an
 * interrupted sweep are reused. Pass t_end_fs <= 0 for the default. */
sqpd_status sqpd_sweep_run(const sqpd_params* p, const char* axis1, const char* axis2,
                           const char* csv_path, int resume, int parallelism,
                           double t_end_fs, sqpd_sweep** out);
void sqpd_sweep_free(sqpd_sweep* s);

int sqpd_sweep_count(const sqpd_sweep* s);
sqpd_status sqpd_sweep_point(const sqpd_sweep* s, int idx, double* axis1, double* axis2,
                             double* max_concurrence, double* t_peak_fs,
                             double* steady_concurrence);
/* 1 when the point finished without error notes, else 0. */
int sqpd_sweep_point_ok(const sqpd_sweep* s, int idx);

/* ---- presets and checks ------------------------------------------------ */

/* Reproduce published figure n (2..9) into outdir. */
sqpd_status sqpd_figure_run(int figure, const char* outdir, int parallelism);

/* Built-in invariant/oracle suite; prints one line per check to stdout and
 * returns the number of failures. */
int sqpd_validate(void);

/* Re-run the scenario at finer truncation and compare concurrence curves.
 * Fails with SQPD_ERR_CONVERGENCE when the deviation exceeds 1e-3. */
sqpd_status sqpd_convergence_check(const sqpd_params* p, const char* scenario,
                                   double* max_deviation);

#ifdef __cplusplus
}
#endif

#endif /* SQPD_H */
