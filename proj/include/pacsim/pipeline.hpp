#ifndef PACSIM_PIPELINE_HPP
#define PACSIM_PIPELINE_HPP

#include "pacsim/io.hpp"
#include "pacsim/opa.hpp"
#include "pacsim/pacs.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pacsim {

// All simulation knobs for one end-to-end run. dim_sim / dim_rec of 0 pick
// defaults (truncation rule / 15).
struct ExperimentConfig {
    Complex alpha;
    int n_add = 1;
    double lambda = 0.1;
    double eta_spd = 0.6;
    double eta_hd = 0.57;
    int phases = 12;
    int samples_per_phase = 20000;
    int bins = 201;
    int dim_sim = 0;
    int dim_rec = 0;
    std::uint64_t seed = 1;
    std::string output_dir;

    static ExperimentConfig from_json(const Json& j);  // unknown keys rejected
    Json to_json() const;
};

struct RunReport {
    double fidelity = 0.0;
    double purity = 0.0;
    Complex gain;
    double vx = 0.0;
    double vp = 0.0;
    double fano = 0.0;
    double p_h = 0.0;
    double p_r = 0.0;
    double pnrd_accept = 0.0;
    double rate = 0.0;
    double min_wigner = 0.0;
    double leakage = 0.0;
    int certified_rank = 0;
    int iterations = 0;
    double log_likelihood = 0.0;

    Json to_json() const;
};

// generate -> sample -> reconstruct -> analyze -> witness. Writes dataset CSV,
// density JSON, analysis JSON and Wigner CSV under cfg.output_dir when set.
RunReport run_pipeline(const ExperimentConfig& cfg);

// CSV with columns n,alpha,F,purity,P_H_model; simulation counterparts of
// per-state summary tables.
std::string table_emulation(const std::vector<ExperimentConfig>& rows);

std::vector<double> phase_grid(int phases);

}  // namespace pacsim

#endif
