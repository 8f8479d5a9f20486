// Command-line front end: end-to-end pipeline runs plus stand-alone emitters
// for the analytics tables, heralding scans, Wigner grids, stellar-rank
// thresholds, operator engineering and tomography.

#include "pacsim/analysis.hpp"
#include "pacsim/engineering.hpp"
#include "pacsim/io.hpp"
#include "pacsim/opa.hpp"
#include "pacsim/pacs.hpp"
#include "pacsim/pipeline.hpp"
#include "pacsim/stellar.hpp"
#include "pacsim/tomography.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <set>
#include <sstream>

namespace {

using namespace pacsim;

std::vector<double> make_grid(double lo, double hi, int steps) {
    if (steps < 2) return {lo};
    return linspace(lo, hi, steps);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-")
        std::cout << content;
    else
        write_text(out_path, content);
}

int cmd_run(const std::string& config_path) {
    ExperimentConfig cfg = ExperimentConfig::from_json(Json::parse(read_text(config_path)));
    RunReport report = run_pipeline(cfg);
    std::cout << report.to_json().dump(2) << "\n";
    return 0;
}

int cmd_pacs_table(double lo, double hi, int steps, const std::vector<int>& ns,
                   const std::string& out_path) {
    std::ostringstream csv;
    csv << "alpha,n,g,Vx,Vp,F_N,beta_opt\n";
    for (int n : ns) {
        for (double a : make_grid(lo, hi, steps)) {
            PacsSpec spec{Complex(a, 0.0), n};
            QuadStats qs = quad_stats(spec);
            csv << a << ',' << n << ',';
            if (a > 0.0)
                csv << gain(spec);
            else
                csv << "nan";
            csv << ',' << qs.vx << ',' << qs.vp << ',';
            if (a > 0.0 || n > 0)
                csv << fano(spec);
            else
                csv << "nan";
            csv << ',' << std::abs(beta_opt(spec)) << '\n';
        }
    }
    emit(out_path, csv.str());
    return 0;
}

int cmd_herald_scan(double lo, double hi, int steps, int n, double lambda, double eta,
                    const std::string& out_path) {
    PnrdModel pnrd{eta, std::max(n, 1)};
    std::ostringstream csv;
    csv << "alpha,n,lambda,P_H,P_R,accept,rate\n";
    for (double a : make_grid(lo, hi, steps)) {
        OpaParams params{lambda, Complex(a, 0.0)};
        csv << a << ',' << n << ',' << lambda << ',' << heralding_probability(params, n)
            << ',' << relative_heralding(params.alpha, n) << ','
            << pnrd_accept_prob(pnrd, n) << ',' << end_to_end_rate(params, pnrd, n) << '\n';
    }
    emit(out_path, csv.str());
    return 0;
}

int cmd_wigner(const std::string& rho_path, double range, int points,
               const std::string& out_path) {
    DensityMatrix rho = load_density(rho_path);
    auto axis = linspace(-range, range, points);
    save_wigner_csv(wigner(rho, axis, axis), out_path);
    return 0;
}

int cmd_analyze(const std::string& rho_path, double alpha, int n,
                const std::string& out_path) {
    DensityMatrix rho = load_density(rho_path);
    int dim = rho.dim();
    FockVector ideal = pacs_state({Complex(alpha, 0.0), n}, std::max(dim, pacs_dim({alpha, n})));
    FockVector ideal_rec{ideal.amps.head(dim)};
    ideal_rec.normalize();

    Json report;
    report["fidelity"] = state_fidelity(rho, ideal_rec);
    report["purity"] = purity(rho);
    if (alpha > 0.0) {
        DensityMatrix rho_in = DensityMatrix::from_pure(coherent_state(alpha, dim, 1e-6));
        Complex g = experimental_gain(rho, rho_in);
        report["gain_re"] = g.real();
        report["gain_im"] = g.imag();
    }
    RhoQuadStats qs = rho_quad_stats(rho, 0.0);
    report["Vx"] = qs.vx;
    report["Vp"] = qs.vp;
    PhotonStats ps = photon_stats(rho);
    report["fano"] = ps.fano ? Json(*ps.fano) : Json();
    auto axis = linspace(-6.0, 6.0, 121);
    report["min_wigner"] = wigner(rho, axis, axis).min_value;
    report["leakage"] = displaced_localization(rho, alpha, n);
    report["alpha"] = alpha;
    report["n"] = n;
    emit(out_path, report.dump(2) + "\n");
    return 0;
}

int cmd_stellar_thresholds(int n, double lo, double hi, int steps,
                           const std::string& out_path) {
    auto grid = make_grid(lo, hi, steps);
    std::vector<ThresholdCurve> curves;
    for (int k = 1; k <= n; ++k) curves.push_back(threshold_curve(n, k, grid));
    std::ostringstream csv;
    csv << "alpha";
    for (const auto& c : curves)
        csv << ",F_th_k" << c.rank << (c.lower_bound ? "_lower_bound" : "");
    csv << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv << grid[i];
        for (const auto& c : curves) csv << ',' << c.f_th[i];
        csv << '\n';
    }
    emit(out_path, csv.str());
    return 0;
}

int cmd_stellar_witness(const std::string& analysis_path) {
    Json analysis = Json::parse(read_text(analysis_path));
    double f = analysis.at("fidelity").get<double>();
    double alpha = analysis.at("alpha").get<double>();
    int n = analysis.at("n").get<int>();
    std::vector<ThresholdCurve> curves;
    for (int k = 1; k <= n; ++k) curves.push_back(threshold_curve(n, k, {alpha}));
    int rank = witness(f, curves, alpha);
    Json out{{"certified_rank", rank},
             {"fidelity", f},
             {"alpha", alpha},
             {"n", n},
             {"rank_ge_2_is_lower_bound", n >= 2}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_engineer(const std::string& input_path, const std::string& out_path) {
    Json in = Json::parse(read_text(input_path));
    DiagonalPolynomial target{in.at("s_k").get<std::vector<double>>()};
    double gamma = in.value("gamma", 1.0);
    SequenceDecomposition dec = decompose(target, gamma);

    Json out{{"b_j", dec.b}, {"gamma", dec.gamma}};
    if (in.contains("test_vector")) {
        auto coeffs = in.at("test_vector").get<std::vector<double>>();
        int dim = static_cast<int>(coeffs.size()) + dec.order + 1;
        FockVector psi;
        psi.amps = Vec::Zero(dim);
        for (std::size_t m = 0; m < coeffs.size(); ++m) psi.amps[m] = coeffs[m];
        psi.normalize();
        FockVector result = apply_sequence(dec, psi);
        Json before = Json::array(), after = Json::array();
        for (int m = 0; m < dim; ++m) {
            before.push_back(psi.amps[m].real());
            after.push_back(result.amps[m].real());
        }
        out["before"] = before;
        out["after_unnormalized"] = after;
    }
    emit(out_path, out.dump(2) + "\n");
    return 0;
}

int cmd_tomo(const std::string& data_path, double eta, int dim,
             const std::string& rho_out, const std::string& report_out) {
    auto records = load_records(data_path);
    std::set<double> unique_thetas;
    for (const auto& rec : records) unique_thetas.insert(rec.theta);
    std::vector<double> phases(unique_thetas.begin(), unique_thetas.end());

    auto edges = default_bin_edges();
    BinnedData data = bin_records(records, phases, edges);
    std::vector<HomodynePovm> povms;
    for (double theta : phases) povms.push_back(build_povm(theta, edges, eta, dim));
    auto [rho, report] = maxlik_reconstruct(data, povms, dim);
    save_density(rho, rho_out);
    emit(report_out, maxlik_report_to_json(report).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heralded multiphoton-added coherent state simulator"};
    app.require_subcommand(1);

    std::string config_path, rho_path, out_path, data_path, analysis_path, report_path;
    double lo = 0.0, hi = 2.0, lambda = 0.1, eta = 0.57, range = 6.0, alpha = 1.0;
    int steps = 21, n = 1, points = 121, dim = 15;
    std::vector<int> ns = {1, 2, 3};

    auto* run = app.add_subcommand("run", "full pipeline from a JSON config");
    run->add_option("--config", config_path, "JSON config")->required();

    auto* table = app.add_subcommand("pacs-table", "closed-form PACS analytics CSV");
    table->add_option("--alpha-min", lo);
    table->add_option("--alpha-max", hi);
    table->add_option("--steps", steps);
    table->add_option("--n", ns, "added-photon numbers");
    table->add_option("--out", out_path);

    auto* herald = app.add_subcommand("herald-scan", "heralding probabilities CSV");
    herald->add_option("--alpha-min", lo);
    herald->add_option("--alpha-max", hi);
    herald->add_option("--steps", steps);
    herald->add_option("--n", n);
    herald->add_option("--lambda", lambda);
    herald->add_option("--eta-spd", eta);
    herald->add_option("--out", out_path);

    auto* wig = app.add_subcommand("wigner", "Wigner grid CSV from a density JSON");
    wig->add_option("--rho", rho_path)->required();
    wig->add_option("--range", range);
    wig->add_option("--points", points);
    wig->add_option("--out", out_path)->required();

    auto* analyze = app.add_subcommand("analyze", "observable report from a density JSON");
    analyze->add_option("--rho", rho_path)->required();
    analyze->add_option("--alpha", alpha)->required();
    analyze->add_option("--n", n)->required();
    analyze->add_option("--out", out_path);

    auto* thresholds = app.add_subcommand("stellar-thresholds", "fidelity thresholds CSV");
    thresholds->add_option("--n", n)->required();
    thresholds->add_option("--alpha-min", lo);
    thresholds->add_option("--alpha-max", hi);
    thresholds->add_option("--steps", steps);
    thresholds->add_option("--out", out_path);

    auto* wit = app.add_subcommand("stellar-witness", "certified rank from analysis JSON");
    wit->add_option("--analysis", analysis_path)->required();

    auto* engineer = app.add_subcommand("engineer", "polynomial decomposition");
    engineer->add_option("--input", config_path, "JSON {s_k[], gamma, test_vector?}")
        ->required();
    engineer->add_option("--out", out_path);

    auto* tomo = app.add_subcommand("tomo", "maximum-likelihood reconstruction");
    tomo->add_option("--data", data_path)->required();
    tomo->add_option("--eta", eta);
    tomo->add_option("--dim", dim);
    tomo->add_option("--rho-out", rho_path)->required();
    tomo->add_option("--report-out", report_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path);
        if (table->parsed()) return cmd_pacs_table(lo, hi, steps, ns, out_path);
        if (herald->parsed()) return cmd_herald_scan(lo, hi, steps, n, lambda, eta, out_path);
        if (wig->parsed()) return cmd_wigner(rho_path, range, points, out_path);
        if (analyze->parsed()) return cmd_analyze(rho_path, alpha, n, out_path);
        if (thresholds->parsed()) return cmd_stellar_thresholds(n, lo, hi, steps, out_path);
        if (wit->parsed()) return cmd_stellar_witness(analysis_path);
        if (engineer->parsed()) return cmd_engineer(config_path, out_path);
        if (tomo->parsed()) return cmd_tomo(data_path, eta, dim, rho_path, report_path);
    } catch (const std::exception& e) {
        pacsim::Json err{{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
