#include "permgeo/simgen.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <random>
#include <sstream>

#include "permgeo/rng.h"

namespace permgeo {

namespace {

constexpr std::uint64_t genotype_stream = 0x67656e6fULL;
constexpr std::uint64_t trait_stream = 0x74726169ULL;

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::size_t to_size(const std::string& key, const std::string& value)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw FormatError("config key '" + key + "' needs a nonnegative integer, got '" + value + "'");
    }
    return v;
}

double to_real(const std::string& key, const std::string& value)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::exception&) {
        throw FormatError("config key '" + key + "' needs a number, got '" + value + "'");
    }
}

std::vector<std::string> sample_ids(std::size_t n)
{
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = "ind" + std::to_string(i + 1);
    }
    return ids;
}

} // namespace

void SimConfig::validate() const
{
    if (n < 3) {
        throw DomainError("simulation needs n >= 3");
    }
    if (p == 0) {
        throw DomainError("simulation needs p >= 1");
    }
    if (!(theta >= 0.0 && theta <= 0.5)) {
        throw DomainError("theta must lie in [0, 0.5]");
    }
    if (chromosomes == 0 || chromosomes > p) {
        throw DomainError("chromosomes must lie in [1, p]");
    }
    if (qtl && qtl->marker >= p) {
        throw DomainError("qtl marker index out of range");
    }
    if (qtl && qtl->noise_sd < 0.0) {
        throw DomainError("noise_sd must be nonnegative");
    }
    if (binary && binary->marker && *binary->marker >= p) {
        throw DomainError("binary trait marker index out of range");
    }
    if (qtl && binary) {
        throw DomainError("choose either a qtl or a binary trait");
    }
}

SimConfig parse_sim_config(std::istream& in)
{
    SimConfig cfg;
    std::string trait = "null";
    QtlSpec qtl;
    BinaryTraitSpec bin;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw FormatError("config line " + std::to_string(line_no) + " lacks '='");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "n") {
            cfg.n = to_size(key, value);
        } else if (key == "p") {
            cfg.p = to_size(key, value);
        } else if (key == "theta") {
            cfg.theta = to_real(key, value);
        } else if (key == "chromosomes") {
            cfg.chromosomes = to_size(key, value);
        } else if (key == "seed") {
            cfg.seed = to_size(key, value);
        } else if (key == "trait") {
            trait = value;
        } else if (key == "qtl_marker") {
            qtl.marker = to_size(key, value);
        } else if (key == "qtl_effect") {
            qtl.effect = to_real(key, value);
        } else if (key == "noise_sd") {
            qtl.noise_sd = to_real(key, value);
        } else if (key == "binary_marker") {
            bin.marker = to_size(key, value);
        } else if (key == "mismatches") {
            bin.mismatches = to_size(key, value);
        } else {
            throw FormatError("unknown config key '" + key + "'");
        }
    }
    if (trait == "qtl") {
        cfg.qtl = qtl;
    } else if (trait == "binary") {
        cfg.binary = bin;
    } else if (trait != "null") {
        throw FormatError("trait must be null, qtl or binary");
    }
    cfg.validate();
    return cfg;
}

GenotypeMatrix simulate_genotypes(const SimConfig& cfg)
{
    cfg.validate();
    GenotypeMatrix g(sample_ids(cfg.n));
    std::vector<BinaryProfile> profiles(cfg.p, BinaryProfile(cfg.n));
    std::vector<std::size_t> chrom_of(cfg.p), index_in_chrom(cfg.p);
    std::size_t k = 0;
    for (std::size_t c = 0; c < cfg.chromosomes; ++c) {
        const std::size_t size = cfg.p / cfg.chromosomes + (c < cfg.p % cfg.chromosomes ? 1 : 0);
        for (std::size_t j = 0; j < size; ++j, ++k) {
            chrom_of[k] = c;
            index_in_chrom[k] = j;
        }
    }
    for (std::size_t i = 0; i < cfg.n; ++i) {
        auto rng = substream(cfg.seed, genotype_stream, i);
        bool current = false;
        for (std::size_t m = 0; m < cfg.p; ++m) {
            if (index_in_chrom[m] == 0) {
                current = rng.below(2) == 1;
            } else if (rng.uniform() < cfg.theta) {
                current = !current;
            }
            profiles[m].set(i, current);
        }
    }
    for (std::size_t m = 0; m < cfg.p; ++m) {
        MarkerPosition pos{"chr" + std::to_string(chrom_of[m] + 1),
                           static_cast<double>(index_in_chrom[m])};
        g.add_marker("m" + std::to_string(m + 1), std::move(profiles[m]), pos);
    }
    return g;
}

TraitVector simulate_trait(const GenotypeMatrix& g, const SimConfig& cfg)
{
    const std::size_t n = g.n();
    auto rng = substream(cfg.seed, trait_stream);
    TraitVector trait;
    if (cfg.binary) {
        std::vector<double> values(n, 0.0);
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        const std::size_t half = n / 2;
        if (!cfg.binary->marker) {
            shuffle(idx.begin(), idx.end(), rng);
            for (std::size_t i = 0; i < half; ++i) {
                values[idx[i]] = 1.0;
            }
        } else {
            BinaryProfile y = g.profile(*cfg.binary->marker);
            std::vector<std::size_t> ones, zeros;
            for (std::size_t i = 0; i < n; ++i) {
                (y.get(i) ? ones : zeros).push_back(i);
            }
            shuffle(ones.begin(), ones.end(), rng);
            shuffle(zeros.begin(), zeros.end(), rng);
            // Rebalance with the fewest flips, then swap pairs across classes.
            const std::size_t s = y.ones();
            std::size_t off = s > half ? s - half : 0;
            std::size_t on = s < half ? half - s : 0;
            const std::size_t minimal = off + on;
            std::size_t extra = cfg.binary->mismatches > minimal ? cfg.binary->mismatches - minimal : 0;
            extra += extra % 2;
            off += extra / 2;
            on += extra / 2;
            if (off > ones.size() || on > zeros.size()) {
                throw DomainError("requested mismatch count is not reachable from this marker");
            }
            for (std::size_t i = 0; i < off; ++i) {
                y.flip(ones[i]);
            }
            for (std::size_t i = 0; i < on; ++i) {
                y.flip(zeros[i]);
            }
            for (std::size_t i = 0; i < n; ++i) {
                values[i] = y.get(i) ? 1.0 : 0.0;
            }
        }
        trait = TraitVector::binary(std::move(values));
    } else {
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) {
            values[i] = normal(rng);
        }
        if (cfg.qtl) {
            const auto& m = g.profile(cfg.qtl->marker);
            for (std::size_t i = 0; i < n; ++i) {
                values[i] = cfg.qtl->effect * (m.get(i) ? 1.0 : 0.0) + cfg.qtl->noise_sd * values[i];
            }
        }
        trait = TraitVector::quantitative(std::move(values));
    }
    trait.sample_ids = g.sample_ids();
    return trait;
}

} // namespace permgeo
