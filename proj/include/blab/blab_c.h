/// @file blab_c.h
/// C-linkage shared-library interface: subcommand runners returning process
/// exit codes, and an opaque incremental simulation handle.
///
/// Exit-code convention: 0 success, 1 configuration or usage error,
/// 2 divergence (simulate) or failed held-out validation (verify).

#ifndef BLAB_C_H
#define BLAB_C_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

const char* blab_version(void);

/* seed < 0 keeps the seed from the config file. err may be NULL. */
int blab_run_simulate(const char* config_path, const char* out_dir, long long seed,
                      char* err, size_t err_len);
int blab_run_verify(const char* config_path, const char* out_dir, const char* lemma_id,
                    long long seed, char* err, size_t err_len);
int blab_run_scan(const char* config_path, const char* out_dir, long long seed,
                  char* err, size_t err_len);
int blab_run_fit(const char* csv_path, const char* out_dir, char* err, size_t err_len);

typedef struct blab_sim blab_sim;

/* NULL on failure with the reason in err. */
blab_sim* blab_sim_create(const char* config_path, char* err, size_t err_len);
/* 0 ok, 2 the state went non-finite, 1 invalid arguments. */
int blab_sim_advance(blab_sim* sim, int steps);
double blab_sim_time(const blab_sim* sim);
double blab_sim_hs_half_norm(const blab_sim* sim);
int blab_sim_save(const blab_sim* sim, const char* path, char* err, size_t err_len);
int blab_sim_load(blab_sim* sim, const char* path, char* err, size_t err_len);
void blab_sim_destroy(blab_sim* sim);

#ifdef __cplusplus
}
#endif

#endif /* BLAB_C_H */
