#include "permgeo/genomodel.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace permgeo {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

std::vector<std::string> split_tabs(const std::string& line)
{
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        cells.emplace_back(line.substr(start, tab - start));
        if (tab == std::string::npos) {
            break;
        }
        start = tab + 1;
    }
    if (!cells.empty() && !cells.back().empty() && cells.back().back() == '\r') {
        cells.back().pop_back();
    }
    return cells;
}

bool is_missing_token(std::string_view s)
{
    return s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan" || s == "." || s == "-"
        || s == "-1" || s == "?";
}

std::optional<double> parse_double(std::string_view s)
{
    double value = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

bool is_label(std::string_view s, std::initializer_list<std::string_view> names)
{
    return std::find(names.begin(), names.end(), s) != names.end();
}

} // namespace

BinaryProfile::BinaryProfile(std::size_t n) : n_(n), words_(word_count(n), 0) {}

BinaryProfile BinaryProfile::from_bits(std::span<const std::uint8_t> bits)
{
    BinaryProfile p(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1) {
            throw FormatError("binary profile entries must be 0 or 1");
        }
        p.set(i, bits[i] != 0);
    }
    return p;
}

BinaryProfile BinaryProfile::from_string(std::string_view bits)
{
    BinaryProfile p(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') {
            throw FormatError("binary profile string must contain only 0 and 1");
        }
        p.set(i, bits[i] == '1');
    }
    return p;
}

void BinaryProfile::set(std::size_t i, bool value)
{
    if (get(i) != value) {
        flip(i);
    }
}

void BinaryProfile::flip(std::size_t i)
{
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    auto& w = words_[i >> 6];
    w ^= mask;
    if (w & mask) {
        ++ones_;
    } else {
        --ones_;
    }
}

BinaryProfile BinaryProfile::complement() const
{
    BinaryProfile c(*this);
    for (auto& w : c.words_) {
        w = ~w;
    }
    if (const auto tail = n_ & 63; tail != 0) {
        c.words_.back() &= (std::uint64_t{1} << tail) - 1;
    }
    c.ones_ = n_ - ones_;
    return c;
}

std::string BinaryProfile::to_string() const
{
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

std::size_t ProfileHash::operator()(const BinaryProfile& p) const noexcept
{
    std::size_t h = p.size();
    for (const auto w : p.words()) {
        h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t manhattan_distance(const BinaryProfile& a, const BinaryProfile& b)
{
    if (a.size() != b.size()) {
        throw DimensionError("profiles have different lengths: " + std::to_string(a.size())
                             + " vs " + std::to_string(b.size()));
    }
    const auto wa = a.words();
    const auto wb = b.words();
    std::size_t d = 0;
    for (std::size_t i = 0; i < wa.size(); ++i) {
        d += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
    }
    return d;
}

GenotypeMatrix::GenotypeMatrix(std::vector<std::string> sample_ids)
    : sample_ids_(std::move(sample_ids))
{
}

void GenotypeMatrix::add_marker(std::string id, BinaryProfile profile,
                                std::optional<MarkerPosition> position)
{
    if (profile.size() != n()) {
        throw DimensionError("marker " + id + " has " + std::to_string(profile.size())
                             + " genotypes, expected " + std::to_string(n()));
    }
    marker_ids_.push_back(std::move(id));
    profiles_.push_back(std::move(profile));
    positions_.push_back(std::move(position));
}

GenotypeMatrix GenotypeMatrix::reordered(std::span<const std::size_t> order) const
{
    GenotypeMatrix out(sample_ids_);
    for (const auto k : order) {
        out.add_marker(marker_ids_.at(k), profiles_.at(k), positions_.at(k));
    }
    return out;
}

bool TraitVector::is_constant() const
{
    return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>{}) == values.end();
}

BinaryProfile TraitVector::as_profile() const
{
    BinaryProfile p(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        p.set(i, values[i] == 1.0);
    }
    return p;
}

TraitVector TraitVector::quantitative(std::vector<double> values)
{
    TraitVector t;
    t.values = std::move(values);
    t.kind = TraitKind::quantitative;
    return t;
}

TraitVector TraitVector::binary(std::vector<double> values)
{
    for (const auto v : values) {
        if (v != 0.0 && v != 1.0) {
            throw FormatError("binary trait values must be 0 or 1");
        }
    }
    TraitVector t;
    t.values = std::move(values);
    t.kind = TraitKind::binary;
    return t;
}

GenotypeMatrix read_genotypes(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("genotype file is empty");
    }
    auto header = split_tabs(line);
    // Optional leading column labels in the header row.
    std::size_t lead = 0;
    if (lead < header.size() && is_label(header[lead], {"marker_id", "marker", "id"})) {
        ++lead;
        if (lead < header.size() && is_label(header[lead], {"chrom", "chromosome", "chr"})) {
            ++lead;
            if (lead < header.size() && is_label(header[lead], {"pos", "position"})) {
                ++lead;
            }
        }
    }
    std::vector<std::string> ids(header.begin() + static_cast<std::ptrdiff_t>(lead), header.end());
    if (ids.empty()) {
        throw FormatError("genotype header lists no individuals");
    }
    const std::size_t n = ids.size();
    GenotypeMatrix g(std::move(ids));

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split_tabs(line);
        if (cells.size() < n + 1 || cells.size() > n + 3) {
            throw DimensionError("genotype line " + std::to_string(line_no) + " has "
                                 + std::to_string(cells.size()) + " cells; expected "
                                 + std::to_string(n) + " genotypes plus 1-3 marker columns");
        }
        const std::size_t meta = cells.size() - n;
        std::optional<MarkerPosition> position;
        if (meta >= 2) {
            MarkerPosition pos;
            pos.chromosome = cells[1];
            if (meta == 3) {
                const auto coord = parse_double(cells[2]);
                if (!coord) {
                    throw FormatError("bad position '" + cells[2] + "' on genotype line "
                                      + std::to_string(line_no));
                }
                pos.coordinate = *coord;
            }
            position = pos;
        }
        BinaryProfile profile(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& cell = cells[meta + i];
            if (cell == "0") {
                continue;
            }
            if (cell == "1") {
                profile.set(i, true);
            } else if (is_missing_token(cell)) {
                throw FormatError("missing genotype for marker " + cells[0] + ", individual "
                                  + g.sample_ids()[i]
                                  + "; impute missing values before analysis");
            } else {
                throw FormatError("genotype '" + cell + "' for marker " + cells[0]
                                  + " is not binary (expected 0 or 1)");
            }
        }
        g.add_marker(cells[0], std::move(profile), std::move(position));
    }
    return g;
}

TraitVector read_trait(std::istream& in, const std::vector<std::string>& expected_ids,
                       const LoadOptions& options)
{
    std::vector<std::string> ids;
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split_tabs(line);
        if (cells.size() != 2) {
            throw FormatError("trait line " + std::to_string(line_no) + " must have 2 columns");
        }
        const auto value = parse_double(cells[1]);
        if (!value) {
            if (ids.empty() && values.empty() && !is_missing_token(cells[1])) {
                continue; // header
            }
            if (is_missing_token(cells[1])) {
                throw FormatError("missing trait value for individual " + cells[0]);
            }
            throw FormatError("trait value '" + cells[1] + "' is not a number");
        }
        ids.push_back(cells[0]);
        values.push_back(*value);
    }
    if (!expected_ids.empty()) {
        if (ids.size() != expected_ids.size()) {
            throw DimensionError("trait file has " + std::to_string(ids.size())
                                 + " values but genotypes have "
                                 + std::to_string(expected_ids.size()) + " individuals");
        }
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (ids[i] != expected_ids[i]) {
                throw FormatError("trait individual '" + ids[i] + "' at row "
                                  + std::to_string(i + 1) + " does not match genotype header '"
                                  + expected_ids[i] + "'");
            }
        }
    }

    const bool all_binary = std::all_of(values.begin(), values.end(),
                                        [](double v) { return v == 0.0 || v == 1.0; });
    TraitVector trait;
    switch (options.trait_kind) {
    case TraitKindOption::binary:
        trait = TraitVector::binary(std::move(values));
        break;
    case TraitKindOption::quantitative:
        trait = TraitVector::quantitative(std::move(values));
        break;
    case TraitKindOption::automatic:
        trait = all_binary ? TraitVector::binary(std::move(values))
                           : TraitVector::quantitative(std::move(values));
        break;
    }
    trait.sample_ids = std::move(ids);
    return trait;
}

Dataset load_dataset(std::istream& genotype_source, std::istream& trait_source,
                     const LoadOptions& options)
{
    Dataset ds;
    ds.genotypes = read_genotypes(genotype_source);
    ds.trait = read_trait(trait_source, ds.genotypes.sample_ids(), options);
    return ds;
}

Dataset load_dataset(const std::string& genotype_path, const std::string& trait_path,
                     const LoadOptions& options)
{
    std::ifstream geno(genotype_path);
    if (!geno) {
        throw Error("cannot open genotype file " + genotype_path);
    }
    std::ifstream trait(trait_path);
    if (!trait) {
        throw Error("cannot open trait file " + trait_path);
    }
    return load_dataset(geno, trait, options);
}

void write_genotypes(std::ostream& out, const GenotypeMatrix& g)
{
    out << "marker_id\tchrom\tpos";
    for (const auto& id : g.sample_ids()) {
        out << '\t' << id;
    }
    out << '\n';
    for (std::size_t k = 0; k < g.p(); ++k) {
        out << g.marker_id(k);
        if (const auto& pos = g.position(k)) {
            out << '\t' << pos->chromosome << '\t' << pos->coordinate;
        } else {
            out << "\t.\t0";
        }
        const auto& prof = g.profile(k);
        for (std::size_t i = 0; i < prof.size(); ++i) {
            out << '\t' << (prof.get(i) ? '1' : '0');
        }
        out << '\n';
    }
}

void write_trait(std::ostream& out, const TraitVector& trait)
{
    std::ostringstream buf;
    buf.precision(17);
    buf << "individual\tvalue\n";
    for (std::size_t i = 0; i < trait.size(); ++i) {
        const std::string id =
            i < trait.sample_ids.size() ? trait.sample_ids[i] : "ind" + std::to_string(i + 1);
        buf << id << '\t' << trait.values[i] << '\n';
    }
    out << buf.str();
}

DedupResult deduplicate_profiles(const GenotypeMatrix& g, const DedupOptions& options)
{
    DedupResult result{GenotypeMatrix(g.sample_ids()), std::vector<std::size_t>(g.p())};
    std::unordered_map<BinaryProfile, std::vector<std::size_t>, ProfileHash> seen;

    for (std::size_t k = 0; k < g.p(); ++k) {
        auto& kept = seen[g.profile(k)];
        std::optional<std::size_t> target;
        for (const auto candidate : kept) {
            if (!options.max_gap) {
                target = candidate;
                break;
            }
            const auto& a = result.matrix.position(candidate);
            const auto& b = g.position(k);
            if (a && b && a->chromosome == b->chromosome
                && std::abs(a->coordinate - b->coordinate) <= *options.max_gap) {
                target = candidate;
                break;
            }
        }
        if (target) {
            result.mapping[k] = *target;
            continue;
        }
        const auto index = result.matrix.p();
        result.matrix.add_marker(g.marker_id(k), g.profile(k), g.position(k));
        kept.push_back(index);
        result.mapping[k] = index;
    }
    return result;
}

} // namespace permgeo
