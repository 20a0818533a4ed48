#include "commands.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "permgeo/assoc_stats.h"
#include "permgeo/efftests.h"
#include "permgeo/estimator.h"
#include "permgeo/genomodel.h"
#include "permgeo/perm_oracle.h"
#include "permgeo/report_io.h"
#include "permgeo/simgen.h"

namespace permgeo::cli {

namespace {

struct DataOptions
{
    std::string geno;
    std::string trait;
    std::string trait_kind = "auto";
    bool no_dedup = false;
};

void add_data_options(CLI::App* sub, DataOptions& o, bool trait_required = true)
{
    sub->add_option("--geno", o.geno, "Genotype TSV")->required()->check(CLI::ExistingFile);
    auto* trait = sub->add_option("--trait", o.trait, "Trait TSV")->check(CLI::ExistingFile);
    if (trait_required) {
        trait->required();
    }
    sub->add_option("--trait-kind", o.trait_kind, "auto | quantitative | binary")
        ->check(CLI::IsMember({"auto", "quantitative", "binary"}));
    sub->add_flag("--no-dedup", o.no_dedup, "Keep duplicate genotype profiles");
}

LoadOptions load_options(const DataOptions& o)
{
    LoadOptions lo;
    if (o.trait_kind == "binary") {
        lo.trait_kind = TraitKindOption::binary;
    } else if (o.trait_kind == "quantitative") {
        lo.trait_kind = TraitKindOption::quantitative;
    }
    return lo;
}

GenotypeMatrix prepare(GenotypeMatrix g, bool no_dedup)
{
    if (no_dedup) {
        return g;
    }
    const std::size_t before = g.p();
    auto dedup = deduplicate_profiles(g);
    if (dedup.matrix.p() != before) {
        std::cerr << "collapsed " << before << " markers into " << dedup.matrix.p()
                  << " distinct profiles\n";
    }
    return std::move(dedup.matrix);
}

Dataset load(const DataOptions& o)
{
    auto ds = load_dataset(o.geno, o.trait, load_options(o));
    ds.genotypes = prepare(std::move(ds.genotypes), o.no_dedup);
    return ds;
}

void emit_json(const nlohmann::json& j, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path);
    }
    out << j.dump(2) << '\n';
}

double resolve_alpha(const std::string& text, const GenotypeMatrix& g, const TraitVector& trait)
{
    if (text == "min") {
        return min_nominal_p(trait, g).nominal_p;
    }
    try {
        std::size_t used = 0;
        const double a = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return a;
    } catch (const std::exception&) {
        throw DomainError("--alpha must be a number or 'min', got '" + text + "'");
    }
}

PermConfig perm_config(std::uint64_t seed, unsigned threads, bool progress)
{
    PermConfig pc;
    pc.seed = seed;
    pc.threads = threads;
    if (progress) {
        pc.progress = [](int stage, std::size_t perms, std::size_t exceed) {
            std::cerr << "stage " << stage << ": " << exceed << " / " << perms << '\n';
        };
    }
    return pc;
}

struct EstimateOptions
{
    DataOptions data;
    std::string alpha = "min";
    std::string mode = "general";
    std::optional<std::size_t> t;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    std::string json;
    std::string radial_tsv;
    std::string counts_tsv;
    bool auto_permute = false;
};

EstimatorConfig estimator_config(const EstimateOptions& o)
{
    EstimatorConfig cfg;
    cfg.t = o.t;
    cfg.radial.samples_per_radius = o.samples;
    cfg.radial.seed = o.seed;
    cfg.mode = o.mode == "hypersphere" ? EstimateMode::hypersphere : EstimateMode::general;
    return cfg;
}

} // namespace

void register_simulate(CLI::App& app)
{
    struct Options
    {
        std::string config;
        std::string prefix;
    };
    auto o = std::make_shared<Options>();
    auto* sub = app.add_subcommand("simulate", "Write simulated genotype and trait TSVs");
    sub->add_option("--config", o->config, "Flat key = value config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out-prefix", o->prefix, "Output prefix")->required();
    sub->callback([o] {
        std::ifstream in(o->config);
        const auto cfg = parse_sim_config(in);
        const auto g = simulate_genotypes(cfg);
        const auto trait = simulate_trait(g, cfg);
        std::ofstream geno(o->prefix + ".geno.tsv");
        std::ofstream tr(o->prefix + ".trait.tsv");
        if (!geno || !tr) {
            throw Error("cannot write outputs with prefix " + o->prefix);
        }
        write_genotypes(geno, g);
        write_trait(tr, trait);
    });
}

void register_estimate(CLI::App& app)
{
    auto o = std::make_shared<EstimateOptions>();
    auto* sub = app.add_subcommand("estimate", "Estimate a permutation p-value by counting");
    add_data_options(sub, o->data);
    sub->add_option("--alpha", o->alpha, "Nominal cutoff, or 'min' for the observed minimum");
    sub->add_option("--mode", o->mode, "general | hypersphere")
        ->check(CLI::IsMember({"general", "hypersphere"}));
    sub->add_option("--t", o->t, "Group size of desired partitions");
    sub->add_option("--samples-per-radius", o->samples, "Monte Carlo samples per radius")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o->seed, "Random seed");
    sub->add_option("--json", o->json, "Write the report here (default stdout)");
    sub->add_option("--radial-tsv", o->radial_tsv, "Write the radial profile (r, p_hat, se)");
    sub->add_option("--counts-tsv", o->counts_tsv, "Write the count table (r, C_U)");
    sub->add_flag("--auto-permute", o->auto_permute,
                  "Follow up estimates above 0.1 with adaptive direct permutation");
    sub->callback([o] {
        const auto ds = load(o->data);
        const double alpha = resolve_alpha(o->alpha, ds.genotypes, ds.trait);
        const auto report =
            estimate_permutation_p(ds.genotypes, ds.trait, alpha, estimator_config(*o));
        auto j = to_json(report);
        if (!o->radial_tsv.empty()) {
            std::ofstream out(o->radial_tsv);
            write_radial_tsv(out, report.radial);
        }
        if (!o->counts_tsv.empty()) {
            std::ofstream out(o->counts_tsv);
            write_count_tsv(out, report.counts);
        }
        if (report.has(EstimateFlag::large_p_unreliable)) {
            std::cerr << "estimate above " << large_p_threshold
                      << " is unreliable; direct permutation is recommended\n";
            if (o->auto_permute) {
                const auto perm = adaptive_permutation_p(ds.genotypes, ds.trait,
                                                         perm_config(o->seed, 0, false), alpha);
                j["permutation"] = to_json(perm);
            }
        }
        emit_json(j, o->json);
    });
}

void register_permute(CLI::App& app)
{
    struct Options
    {
        DataOptions data;
        std::string alpha = "min";
        std::size_t max_perms = 0;
        bool adaptive = false;
        bool exhaustive = false;
        std::uint64_t seed = 1;
        unsigned threads = 0;
        std::string json;
    };
    auto o = std::make_shared<Options>();
    auto* sub = app.add_subcommand("permute", "Direct permutation p-value");
    add_data_options(sub, o->data);
    sub->add_option("--alpha", o->alpha, "Nominal cutoff, or 'min' for the observed minimum");
    auto* fixed = sub->add_option("--max-perms", o->max_perms, "Fixed number of permutations")
                      ->check(CLI::PositiveNumber);
    auto* adaptive = sub->add_flag("--adaptive", o->adaptive, "Staged schedule up to 500,000");
    auto* exhaustive =
        sub->add_flag("--exhaustive", o->exhaustive, "Enumerate all labelings (binary, small n)");
    fixed->excludes(adaptive)->excludes(exhaustive);
    adaptive->excludes(exhaustive);
    sub->add_option("--seed", o->seed, "Random seed");
    sub->add_option("--threads", o->threads, "Worker threads (0 = all cores)");
    sub->add_option("--json", o->json, "Write the result here (default stdout)");
    sub->callback([o] {
        if (o->max_perms == 0 && !o->adaptive && !o->exhaustive) {
            throw CLI::RequiredError("one of --max-perms, --adaptive or --exhaustive");
        }
        const auto ds = load(o->data);
        const double alpha = resolve_alpha(o->alpha, ds.genotypes, ds.trait);
        const auto pc = perm_config(o->seed, o->threads, o->adaptive);
        PermutationResult r;
        if (o->exhaustive) {
            r = exhaustive_binary(ds.genotypes, ds.trait, alpha);
        } else if (o->adaptive) {
            r = adaptive_permutation_p(ds.genotypes, ds.trait, pc, alpha);
        } else {
            r = direct_permutation_p(ds.genotypes, ds.trait, alpha, o->max_perms, pc);
        }
        emit_json(to_json(r), o->json);
    });
}

namespace {

nlohmann::json compare_one(const GenotypeMatrix& g, const TraitVector& trait,
                           const EstimateOptions& o, std::uint64_t seed)
{
    const auto nominal = min_nominal_p(trait, g);
    EstimateOptions local = o;
    local.seed = seed;
    const auto est = estimate_permutation_p(g, trait, nominal.nominal_p, estimator_config(local));
    const auto perm = adaptive_permutation_p(g, trait, perm_config(seed, 0, false), nominal.nominal_p);
    nlohmann::json j;
    j["nominal_p"] = nominal.nominal_p;
    j["marker"] = g.marker_id(nominal.marker_index);
    j["estimate"] = to_json(est);
    j["permutation"] = to_json(perm);
    j["ratio"] = perm.p_hat > 0.0 ? nlohmann::json(est.estimate / perm.p_hat)
                                  : nlohmann::json(nullptr);
    return j;
}

std::vector<std::string> split_tabs(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, '\t')) {
        if (!cell.empty() && cell.back() == '\r') {
            cell.pop_back();
        }
        cells.push_back(cell);
    }
    return cells;
}

} // namespace

void register_compare(CLI::App& app)
{
    struct Options
    {
        EstimateOptions est;
        std::string traits;
        std::string out;
    };
    auto o = std::make_shared<Options>();
    auto* sub = app.add_subcommand("compare", "Estimate and adaptive permutation side by side");
    add_data_options(sub, o->est.data, false);
    auto* batch = sub->add_option("--traits", o->traits,
                                  "Trait matrix TSV (header: trait_id then individual IDs)")
                      ->check(CLI::ExistingFile);
    sub->get_option("--trait")->excludes(batch);
    sub->add_option("--t", o->est.t, "Group size of desired partitions");
    sub->add_option("--samples-per-radius", o->est.samples, "Monte Carlo samples per radius")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o->est.seed, "Random seed");
    sub->add_option("--json", o->est.json, "Single trait: JSON report; batch: JSON lines");
    sub->add_option("--out", o->out, "Batch mode: TSV summary (default stdout)");
    sub->callback([o] {
        if (o->traits.empty()) {
            if (o->est.data.trait.empty()) {
                throw CLI::RequiredError("--trait or --traits");
            }
            const auto ds = load(o->est.data);
            emit_json(compare_one(ds.genotypes, ds.trait, o->est, o->est.seed), o->est.json);
            return;
        }
        std::ifstream geno(o->est.data.geno);
        const auto g = prepare(read_genotypes(geno), o->est.data.no_dedup);
        std::ifstream in(o->traits);
        std::string line;
        if (!std::getline(in, line)) {
            throw FormatError("trait matrix is empty");
        }
        const auto header = split_tabs(line);
        if (header.size() != g.n() + 1) {
            throw DimensionError("trait matrix header lists " + std::to_string(header.size() - 1)
                                 + " individuals, genotypes have " + std::to_string(g.n()));
        }
        for (std::size_t i = 0; i < g.n(); ++i) {
            if (header[i + 1] != g.sample_ids()[i]) {
                throw FormatError("trait matrix individual '" + header[i + 1]
                                  + "' does not match genotype header");
            }
        }
        std::ofstream tsv_file;
        std::ostream* tsv = &std::cout;
        if (!o->out.empty()) {
            tsv_file.open(o->out);
            tsv = &tsv_file;
        }
        std::ofstream jsonl;
        if (!o->est.json.empty()) {
            jsonl.open(o->est.json);
        }
        *tsv << "trait_id\tnominal_p\testimate\testimate_raw\tflags\tperm_p\tn_perms\tratio\n";
        std::size_t index = 0;
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            const auto cells = split_tabs(line);
            if (cells.size() != g.n() + 1) {
                throw DimensionError("trait row " + cells[0] + " has the wrong number of values");
            }
            std::vector<double> values;
            for (std::size_t i = 1; i < cells.size(); ++i) {
                values.push_back(std::stod(cells[i]));
            }
            auto trait = TraitVector::quantitative(std::move(values));
            if (o->est.data.trait_kind == "binary") {
                trait = TraitVector::binary(std::move(trait.values));
            }
            // Each trait gets its own seed derived from the global one.
            const std::uint64_t seed = o->est.seed * 1'000'003ULL + index++;
            auto j = compare_one(g, trait, o->est, seed);
            j["trait_id"] = cells[0];
            std::string flags;
            for (const auto& f : j["estimate"]["flags"]) {
                flags += (flags.empty() ? "" : ",") + f.get<std::string>();
            }
            *tsv << cells[0] << '\t' << j["nominal_p"].get<double>() << '\t'
                 << j["estimate"]["estimate"].get<double>() << '\t'
                 << j["estimate"]["estimate_raw"].get<double>() << '\t'
                 << (flags.empty() ? "-" : flags) << '\t'
                 << j["permutation"]["p_hat"].get<double>() << '\t'
                 << j["permutation"]["n_perms"].get<std::size_t>() << '\t'
                 << (j["ratio"].is_null() ? std::string("NA") : std::to_string(j["ratio"].get<double>()))
                 << '\n';
            tsv->flush();
            if (jsonl.is_open()) {
                jsonl << j.dump() << '\n';
            }
        }
    });
}

void register_efftests(CLI::App& app)
{
    struct Options
    {
        std::string pairs;
        double lo = 1e-10;
        double hi = 1e-3;
        std::string json;
    };
    auto o = std::make_shared<Options>();
    auto* sub = app.add_subcommand("efftests", "Fit q = eta * p^kappa by median regression");
    sub->add_option("--pairs", o->pairs, "TSV with nominal_p and permutation_p columns")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--fit-lo", o->lo, "Lower nominal p bound of the fit range");
    sub->add_option("--fit-hi", o->hi, "Upper nominal p bound of the fit range");
    sub->add_option("--json", o->json, "Write the fit here (default stdout)");
    sub->callback([o] {
        std::ifstream in(o->pairs);
        std::vector<PValuePair> pairs;
        std::string line;
        while (std::getline(in, line)) {
            const auto cells = split_tabs(line);
            if (cells.size() < 2) {
                continue;
            }
            try {
                pairs.push_back({std::stod(cells[0]), std::stod(cells[1])});
            } catch (const std::exception&) {
                if (!pairs.empty()) {
                    throw FormatError("bad pair line: " + line);
                }
            }
        }
        const auto fit = fit_effective_tests(pairs, o->lo, o->hi);
        auto j = to_json(fit);
        j["effective_tests_at_1e-3"] = effective_tests(fit, 1e-3);
        j["effective_tests_at_1e-6"] = effective_tests(fit, 1e-6);
        emit_json(j, o->json);
    });
}

} // namespace permgeo::cli
