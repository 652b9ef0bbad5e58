#include "sumsetlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sumsetlab {

double round12(double v)
{
    if (!std::isfinite(v) || v == 0.0) return v;
    return std::stod(format12(v));
}

std::string format12(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Json to_json(const IntSet& s)
{
    return Json(std::vector<std::int64_t>(s.begin(), s.end()));
}

Json to_json(const CycSet& s)
{
    return {{"mod", s.modulus()}, {"residues", std::vector<std::int64_t>(s.begin(), s.end())}};
}

Json to_json(const ConvTable& t)
{
    Json entries = Json::array();
    for (const auto& [x, c] : t.entries) entries.push_back({x, c});
    Json j = {{"entries", entries}};
    if (t.domain == ConvTable::Domain::Cyclic) j["mod"] = t.modulus;
    return j;
}

namespace {

const char* relation_name(BoundCheck::Relation r)
{
    switch (r) {
    case BoundCheck::Relation::AtLeast: return ">=";
    case BoundCheck::Relation::AtMost: return "<=";
    case BoundCheck::Relation::Within: return "within";
    }
    return "?";
}

} // namespace

Json to_json(const BoundCheck& c)
{
    Json j = {{"name", c.name},
              {"relation", relation_name(c.relation)},
              {"lhs", to_string(c.lhs)},
              {"rhs", to_string(c.rhs)},
              {"holds", c.holds},
              {"witness", c.witness}};
    if (c.rhs_upper) j["rhs_upper"] = to_string(*c.rhs_upper);
    return j;
}

Json to_json(const APDescriptor& ap)
{
    Json j = {{"start", ap.start}, {"step", ap.step}, {"length", ap.length}};
    j["ambient"] = ap.modulus ? Json(*ap.modulus) : Json("Z");
    return j;
}

Json to_json(const DoublingReport& r)
{
    return {{"N", r.n},
            {"t", r.t},
            {"truncated_sum", r.truncated},
            {"delta", to_string(r.delta)},
            {"delta_value", round12(r.delta_value())}};
}

Json to_json(const WrapResult& w)
{
    return {{"n", w.n},
            {"x", w.x},
            {"wrapped", to_json(w.wrapped)},
            {"wrapped_size", w.wrapped.size()},
            {"truncated_sum_t", w.truncated},
            {"witnesses", {{"a", w.witness_a}, {"c", w.witness_c}}},
            {"report", to_json(w.report)},
            {"bounds",
             {{"size", w.report.n - 2 * w.report.t}, {"sum", to_string(w.sum_bound())}}},
            {"size_ok", w.size_ok()},
            {"sum_ok", w.sum_ok()}};
}

Json to_json(const SubgroupResult& g)
{
    return {{"mod", g.modulus},
            {"step", g.step},
            {"subgroup_size", g.subgroup.size()},
            {"x0", g.x0},
            {"witnesses", {{"a", g.witness_a}, {"b", g.witness_b}}},
            {"cosetA", g.coset_a},
            {"cosetB", g.coset_b},
            {"outsideA", g.outside_a},
            {"outsideB", g.outside_b},
            {"coset_pairs", g.coset_pairs},
            {"t", to_string(g.t)},
            {"eta", to_string(g.eta)}};
}

Json to_json(const ProgressionCover& c)
{
    return {{"start", c.progression.start},
            {"step", c.progression.step},
            {"length", c.progression.length},
            {"exceptional", to_json(c.exceptional)},
            {"delta", to_string(c.delta)},
            {"t", c.t},
            {"bounds",
             {{"lenBound", round12(to_double(c.length_bound))},
              {"excBound", round12(to_double(c.exceptional_bound))}}},
            {"pipeline",
             {{"wrapModulus", c.wrap_modulus},
              {"wrapStart", c.wrap_start},
              {"subgroupStep", c.subgroup_step},
              {"eta", to_string(c.eta)},
              {"foldedOutside", c.folded_outside},
              {"foldedOutsideWithinHalfT", c.folded_outside_ok}}}};
}

Json to_json(const NotMet& n)
{
    return {{"hypothesis_met", false}, {"stage", n.stage}, {"reason", n.reason}};
}

Json to_json(const ProbEstimate& e)
{
    Json j = {{"k", e.k},
              {"method", to_string(e.method)},
              {"condition", to_string(e.condition)},
              {"lower", round12(e.lower)},
              {"upper", round12(e.upper)},
              {"point", round12(e.point)},
              {"M", e.m}};
    if (e.method == Method::MonteCarlo) {
        j["stderr"] = round12(e.std_error);
        j["samples"] = e.samples;
        j["seed"] = e.seed;
    }
    return j;
}

Json to_json(const PkTable& t)
{
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        Json row = to_json(r.estimate);
        row["p_k"] = round12(r.pk);
        row["p_k_sigma"] = round12(r.pk_sigma);
        rows.push_back(row);
    }
    auto pairs = [](const std::vector<std::pair<int, double>>& v) {
        Json a = Json::array();
        for (const auto& [k, p] : v) a.push_back({k, round12(p)});
        return a;
    };
    return {{"rows", rows},
            {"parityEven", pairs(t.parity_even)},
            {"parityOdd", pairs(t.parity_odd)},
            {"violations", t.violations},
            {"countForcedMiss", t.count_forced_miss}};
}

IntSet int_set_from_json(const Json& j)
{
    require(j.is_array(), "set must be a JSON array of integers");
    std::vector<std::int64_t> v;
    for (const auto& x : j) {
        require(x.is_number_integer(), "set elements must be integers");
        v.push_back(x.get<std::int64_t>());
    }
    return IntSet(std::move(v));
}

CycSet cyc_set_from_json(const Json& j)
{
    require(j.is_object() && j.contains("mod") && j.contains("residues"),
            "cyclic set must look like {\"mod\": n, \"residues\": [...]}");
    require(j["mod"].is_number_integer(), "mod must be an integer");
    const auto n = j["mod"].get<std::int64_t>();
    std::vector<std::int64_t> v;
    for (const auto& x : j["residues"]) {
        require(x.is_number_integer(), "residues must be integers");
        const auto r = x.get<std::int64_t>();
        require(r >= 0 && r < n, "residue outside [0, mod)");
        v.push_back(r);
    }
    return CycSet(n, std::move(v));
}

ConvTable conv_table_from_json(const Json& j)
{
    require(j.is_object() && j.contains("entries"), "conv table needs \"entries\"");
    ConvTable t;
    if (j.contains("mod")) {
        t.domain = ConvTable::Domain::Cyclic;
        t.modulus = j["mod"].get<std::int64_t>();
        t.lo = 0;
        t.hi = t.modulus - 1;
    }
    for (const auto& e : j["entries"]) {
        require(e.is_array() && e.size() == 2, "conv entries are [point, count] pairs");
        t.entries.emplace_back(e[0].get<std::int64_t>(), e[1].get<std::int64_t>());
    }
    for (std::size_t i = 1; i < t.entries.size(); ++i)
        require(t.entries[i - 1].first < t.entries[i].first, "conv entries must be sorted by point");
    if (t.domain == ConvTable::Domain::Integers && !t.entries.empty()) {
        t.lo = t.entries.front().first;
        t.hi = t.entries.back().first;
    }
    return t;
}

IntSet int_set_from_lines(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<std::int64_t> v;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const auto token = line.substr(first, last - first + 1);
        std::size_t used = 0;
        std::int64_t x = 0;
        try {
            x = std::stoll(token, &used);
        } catch (const std::exception&) {
            throw Error("not an integer: " + token);
        }
        require(used == token.size(), "not an integer: " + token);
        v.push_back(x);
    }
    return IntSet(std::move(v));
}

std::string pk_table_csv(const PkTable& t)
{
    std::ostringstream out;
    out << "k,method,point,lower,upper,stderr,p_k,p_k_sigma\n";
    for (const auto& r : t.rows) {
        const auto& e = r.estimate;
        out << r.k << ',' << to_string(e.method) << ',' << format12(e.point) << ','
            << format12(e.lower) << ',' << format12(e.upper) << ',' << format12(e.std_error) << ','
            << format12(r.pk) << ',' << format12(r.pk_sigma) << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace sumsetlab
