#include "permgeo/report_io.h"

#include <cmath>
#include <ostream>
#include <sstream>

namespace permgeo {

namespace {

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

std::string flag_list(const EstimateReport& report)
{
    std::string out;
    for (const auto f : report.flags) {
        if (!out.empty()) {
            out += ',';
        }
        out += to_string(f);
    }
    return out.empty() ? "-" : out;
}

} // namespace

nlohmann::json to_json(const EstimateReport& report)
{
    nlohmann::json flags = nlohmann::json::array();
    for (const auto f : report.flags) {
        flags.push_back(to_string(f));
    }
    return {
        {"alpha", report.alpha},
        {"numerator", report.numerator.convert_to<double>()},
        {"n_p", report.n_p.str()},
        {"estimate_raw", report.estimate_raw},
        {"estimate", report.estimate},
        {"r_l", report.r_l},
        {"r_u", report.r_u},
        {"mode", to_string(report.mode)},
        {"flags", flags},
        {"seconds", report.seconds},
        {"method",
         {{"t", report.t},
          {"samples_per_radius", report.radial.samples_per_radius},
          {"envelope", "running_minimum"},
          {"t_test", "pooled_variance"}}},
    };
}

nlohmann::json to_json(const PermutationResult& result)
{
    nlohmann::json j = {
        {"alpha", result.alpha},
        {"n_perms", result.n_perms},
        {"n_exceed", result.n_exceed},
        {"p_hat", result.p_hat},
        {"ci95", {result.ci_lo, result.ci_hi}},
        {"exact", result.exact},
        {"seconds", result.seconds},
    };
    j["stopped_at_stage"] = result.stopped_at_stage ? nlohmann::json(*result.stopped_at_stage)
                                                    : nlohmann::json(nullptr);
    if (result.stopped_at_stage) {
        j["method"] = {{"stopping_bound", "clopper_pearson_one_sided"},
                       {"confidence", adaptive_confidence}};
    }
    return j;
}

nlohmann::json to_json(const EffTestsFit& fit)
{
    nlohmann::json residuals = nlohmann::json::array();
    for (const auto r : fit.residuals) {
        residuals.push_back(std::isfinite(r) ? nlohmann::json(r) : nlohmann::json(nullptr));
    }
    return {
        {"eta", fit.eta},
        {"kappa", fit.kappa},
        {"n_points", fit.n_points},
        {"fit_range", {fit.fit_lo, fit.fit_hi}},
        {"objective", fit.objective},
        {"residuals", residuals},
    };
}

std::string estimate_tsv_header()
{
    return "alpha\tnumerator\tn_p\testimate_raw\testimate\tr_l\tr_u\tmode\tflags\tseconds";
}

std::string to_tsv_row(const EstimateReport& report)
{
    std::ostringstream s;
    s << fmt(report.alpha) << '\t' << fmt(report.numerator.convert_to<double>()) << '\t'
      << report.n_p.str() << '\t' << fmt(report.estimate_raw) << '\t' << fmt(report.estimate)
      << '\t' << report.r_l << '\t' << report.r_u << '\t' << to_string(report.mode) << '\t'
      << flag_list(report) << '\t' << fmt(report.seconds);
    return s.str();
}

std::string permutation_tsv_header()
{
    return "alpha\tn_perms\tn_exceed\tp_hat\tci_lo\tci_hi\tstopped_at_stage\texact\tseconds";
}

std::string to_tsv_row(const PermutationResult& result)
{
    std::ostringstream s;
    s << fmt(result.alpha) << '\t' << result.n_perms << '\t' << result.n_exceed << '\t'
      << fmt(result.p_hat) << '\t' << fmt(result.ci_lo) << '\t' << fmt(result.ci_hi) << '\t'
      << (result.stopped_at_stage ? std::to_string(*result.stopped_at_stage) : "-") << '\t'
      << (result.exact ? "true" : "false") << '\t' << fmt(result.seconds);
    return s.str();
}

void write_count_tsv(std::ostream& out, const CountTable& table)
{
    out << "r\tC_U\n";
    for (std::size_t r = 0; r <= table.r_max(); ++r) {
        out << r << '\t' << table.c_u(r).str() << '\n';
    }
}

} // namespace permgeo
