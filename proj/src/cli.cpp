#include "sumsetlab/cli.hpp"

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/entropy.hpp"
#include "sumsetlab/io.hpp"
#include "sumsetlab/parallel.hpp"
#include "sumsetlab/randomsum.hpp"
#include "sumsetlab/setcore.hpp"
#include "sumsetlab/structure.hpp"
#include "sumsetlab/verify.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>

namespace sumsetlab {

namespace {

// Everything the subcommands read from the command line.
struct RunConfig {
    std::string set, set_b;
    std::string format = "json";
    std::optional<std::int64_t> modulus;
    std::int64_t t = 1;
    std::string t_rational = "1", eta = "1/4", delta = "1/2";
    std::vector<std::int64_t> ap_p, ap_q;
    int kmax = 12;
    int k = 0, n = 0, m = 20;
    std::optional<int> m_opt;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    int exact_budget = 20;
    bool count_forced_miss = true;
    bool csv = false, json = false;
    std::string condition = "none";
    double t_real = 0.5;
    int nmax = 500;
    int threads = 0;
    VerifyOptions verify;
    std::vector<std::string> suites;
    bool all = false;
};

void emit(std::ostream& out, const Json& j)
{
    out << j.dump(2) << '\n';
}

std::string load_source(const std::string& source)
{
    require(!source.empty(), "no set given");
    const auto first = source.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (source[first] == '[' || source[first] == '{')) return source;
    require(std::filesystem::exists(source), "cannot open " + source);
    return read_text_file(source);
}

IntSet read_int_set(const std::string& source, const std::string& format)
{
    const auto text = load_source(source);
    if (format == "lines") return int_set_from_lines(text);
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(std::string("malformed JSON set: ") + e.what());
    }
    return int_set_from_json(j);
}

CycSet read_cyc_set(const std::string& source, const std::string& format, std::optional<std::int64_t> mod)
{
    const auto text = load_source(source);
    Json j;
    if (format == "lines") {
        require(mod.has_value(), "--mod is required for residues given as lines");
        const auto s = int_set_from_lines(text);
        return CycSet(*mod, std::vector<std::int64_t>(s.begin(), s.end()));
    }
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(std::string("malformed JSON set: ") + e.what());
    }
    if (j.is_object()) {
        auto s = cyc_set_from_json(j);
        require(!mod || *mod == s.modulus(), "--mod disagrees with the set's modulus");
        return s;
    }
    require(mod.has_value(), "--mod is required for a plain residue array");
    require(*mod >= 1, "--mod must be positive");
    const auto s = int_set_from_json(j);
    return CycSet(*mod, std::vector<std::int64_t>(s.begin(), s.end()));
}

// A JSON object names its own modulus, so it is cyclic even without --mod.
bool is_cyclic(const RunConfig& c)
{
    if (c.modulus) return true;
    if (c.format != "json") return false;
    const auto first = c.set.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && c.set[first] == '{') return true;
    if (first != std::string::npos && c.set[first] == '[') return false;
    const auto text = load_source(c.set);
    const auto open = text.find_first_not_of(" \t\r\n");
    return open != std::string::npos && text[open] == '{';
}

APDescriptor ap_from(const std::vector<std::int64_t>& v, std::int64_t mod)
{
    require(v.size() == 3, "progressions are given as start,step,length");
    return APDescriptor::make(floor_mod(v[0], mod), floor_mod(v[1], mod), v[2], mod);
}

int not_met(std::ostream& out, const NotMet& n)
{
    emit(out, to_json(n));
    return kExitNotMet;
}

// --------------------------------------------------------------- handlers

int cmd_sumset(const RunConfig& c, std::ostream& out)
{
    if (is_cyclic(c)) {
        const auto a = read_cyc_set(c.set, c.format, c.modulus);
        const auto b = c.set_b.empty() ? a : read_cyc_set(c.set_b, c.format, a.modulus());
        emit(out, to_json(sumset(a, b)));
    } else {
        const auto a = read_int_set(c.set, c.format);
        const auto b = c.set_b.empty() ? a : read_int_set(c.set_b, c.format);
        emit(out, to_json(sumset(a, b)));
    }
    return kExitOk;
}

int cmd_conv(const RunConfig& c, std::ostream& out)
{
    if (is_cyclic(c)) {
        const auto a = read_cyc_set(c.set, c.format, c.modulus);
        const auto b = c.set_b.empty() ? a : read_cyc_set(c.set_b, c.format, a.modulus());
        emit(out, to_json(convolution(a, b)));
    } else {
        const auto a = read_int_set(c.set, c.format);
        const auto b = c.set_b.empty() ? a : read_int_set(c.set_b, c.format);
        emit(out, to_json(convolution(a, b)));
    }
    return kExitOk;
}

int cmd_popdouble(const RunConfig& c, std::ostream& out)
{
    const auto s = read_int_set(c.set, c.format);
    emit(out, to_json(doubling_report(s, c.t)));
    return kExitOk;
}

int cmd_pollard(const RunConfig& c, std::ostream& out)
{
    const auto a = read_cyc_set(c.set, c.format, c.modulus);
    const auto b = c.set_b.empty() ? a : read_cyc_set(c.set_b, c.format, a.modulus());
    const auto check = pollard_check(a, b, c.t);
    emit(out, to_json(check));
    return check.holds ? kExitOk : kExitViolation;
}

int cmd_freiman(const RunConfig& c, std::ostream& out)
{
    const auto s = read_int_set(c.set, c.format);
    const auto r = freiman_3k3_check(s);
    Json j = {{"set_size", r.set_size}, {"sumset_size", r.sumset_size},
              {"hypothesis_met", r.hypothesis_met}};
    if (r.cover) j["cover"] = to_json(*r.cover);
    if (r.check) j["check"] = to_json(*r.check);
    emit(out, j);
    if (!r.hypothesis_met) return kExitNotMet;
    return r.check->holds ? kExitOk : kExitViolation;
}

int cmd_ap_intersect(const RunConfig& c, std::ostream& out)
{
    require(c.modulus.has_value(), "--mod is required");
    const auto r = ap_intersect(ap_from(c.ap_p, *c.modulus), ap_from(c.ap_q, *c.modulus));
    Json j = {{"hypothesis_met", r.hypothesis_met}, {"intersection", r.intersection}};
    if (!r.reason.empty()) j["reason"] = r.reason;
    if (r.progression) j["progression"] = to_json(*r.progression);
    emit(out, j);
    return r.hypothesis_met ? kExitOk : kExitNotMet;
}

int cmd_wrap(const RunConfig& c, std::ostream& out)
{
    const auto s = read_int_set(c.set, c.format);
    const auto w = wrap(s, c.t);
    emit(out, to_json(w));
    return w.size_ok() && w.sum_ok() ? kExitOk : kExitViolation;
}

int cmd_subgroup(const RunConfig& c, std::ostream& out)
{
    const auto a = read_cyc_set(c.set, c.format, c.modulus);
    const auto b = c.set_b.empty() ? a : read_cyc_set(c.set_b, c.format, a.modulus());
    const auto r = find_subgroup(a, b, parse_rational(c.t_rational), parse_rational(c.eta));
    if (!met(r)) return not_met(out, std::get<NotMet>(r));
    emit(out, to_json(std::get<SubgroupResult>(r)));
    return kExitOk;
}

int cmd_recover(const RunConfig& c, std::ostream& out)
{
    const auto s = read_int_set(c.set, c.format);
    const auto r = recover_progression(s, c.t);
    if (!met(r)) return not_met(out, std::get<NotMet>(r));
    emit(out, to_json(std::get<ProgressionCover>(r)));
    return kExitOk;
}

int cmd_pk(const RunConfig& c, std::ostream& out)
{
    PkOptions o;
    o.kmax = c.kmax;
    o.samples = c.samples;
    o.seed = c.seed;
    o.exact_budget = c.exact_budget;
    o.count_forced_miss = c.count_forced_miss;
    const auto table = pk_table(o);
    if (c.json)
        emit(out, to_json(table));
    else
        out << pk_table_csv(table);
    return table.violations.empty() ? kExitOk : kExitViolation;
}

int cmd_miss(const RunConfig& c, std::ostream& out)
{
    Json rows = Json::array();
    for (const auto& e : exact_miss_distribution(c.m, c.kmax, parse_condition(c.condition)))
        rows.push_back(to_json(e));
    emit(out, {{"M", c.m}, {"tail", round12(tail_bound(c.m + 1))}, {"rows", rows}});
    return kExitOk;
}

int cmd_mc(const RunConfig& c, std::ostream& out)
{
    emit(out, to_json(mc_estimate(c.k, c.samples, c.m_opt, c.seed, parse_condition(c.condition))));
    return kExitOk;
}

int cmd_tail(const RunConfig& c, std::ostream& out)
{
    emit(out, {{"M", c.m}, {"tail", round12(tail_bound(c.m))}});
    return kExitOk;
}

int cmd_entropy_check(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const auto r = verify_entropy(c.nmax);
    emit(out, to_json(r));
    err << "entropy: " << r.instances << " checks, " << r.violations << " violations\n";
    return r.ok() ? kExitOk : kExitViolation;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    std::vector<SuiteReport> reports;
    if (c.all || c.suites.empty()) {
        reports = verify_all(c.verify);
    } else {
        const auto& v = c.verify;
        std::optional<MissHistogram> mc;
        auto sampled = [&]() -> const MissHistogram& {
            if (!mc) mc = sample_misses(std::max(10 * v.kmax, 200), v.samples, v.seed);
            return *mc;
        };
        for (const auto& name : c.suites) {
            if (name == "pollard") {
                reports.push_back(verify_pollard_exhaustive(v.pollard_pmax));
                reports.push_back(verify_pollard_random(v.pollard_random, v.pollard_random_pmax, v.seed));
            } else if (name == "equality") {
                reports.push_back(verify_equality(v.equality_n));
            } else if (name == "freiman") {
                reports.push_back(verify_freiman(v.freiman_nmax));
            } else if (name == "ap-intersect") {
                reports.push_back(verify_ap_intersect(v.apintersect_pmax));
            } else if (name == "wrap") {
                reports.push_back(verify_wrap_exhaustive(v.wrap_n));
                reports.push_back(verify_wrap_random(v.wrap_random, v.seed));
            } else if (name == "recover") {
                reports.push_back(verify_recover(v.recover_random, v.seed));
                reports.push_back(verify_worked_example());
            } else if (name == "entropy") {
                reports.push_back(verify_entropy(v.entropy_nmax));
            } else if (name == "tail") {
                reports.push_back(verify_tail(v.tail_kmax));
            } else if (name == "shift") {
                reports.push_back(verify_shift_exact(v.shift_exact_m, v.shift_exact_kmax));
                reports.push_back(verify_shift_mc(sampled(), v.kmax));
            } else if (name == "pk") {
                PkOptions o;
                o.kmax = v.kmax;
                o.samples = v.samples;
                o.seed = v.seed;
                o.exact_budget = v.exact_budget;
                reports.push_back(verify_parity(o));
                reports.push_back(verify_scaling(sampled(), 6, v.kmax));
            } else {
                throw Error("unknown suite: " + name);
            }
        }
    }
    Json suites = Json::array();
    std::int64_t violations = 0;
    for (const auto& r : reports) {
        suites.push_back(to_json(r));
        violations += r.violations;
        err << std::left << std::setw(28) << r.name << (r.ok() ? " ok  " : " FAIL") << "  instances "
            << r.instances << "  violations " << r.violations << "  " << std::fixed
            << std::setprecision(2) << r.seconds << "s\n";
    }
    emit(out, {{"suites", suites}, {"violations", violations}});
    err << "verify: " << reports.size() << " suites, " << violations << " violations\n";
    return violations == 0 ? kExitOk : kExitViolation;
}

// ------------------------------------------------------------------ parser

void add_set_options(CLI::App* app, RunConfig& c, bool second, bool modulus)
{
    app->add_option("--set,--a", c.set, "set: JSON literal or file path")->required();
    if (second) app->add_option("--set-b,--b", c.set_b, "second set (defaults to the first)");
    if (modulus) app->add_option("--mod", c.modulus, "work in Z/nZ");
    app->add_option("--format", c.format, "input format")->check(CLI::IsMember({"json", "lines"}));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"sumsetlab: sumsets, truncated convolutions and random sumsets"};
    app.require_subcommand(1);
    app.add_option("--threads", c.threads, "worker cap (default: SUMSETLAB_THREADS or all cores)")
        ->check(CLI::PositiveNumber);

    std::function<int()> action;
    auto bind = [&](CLI::App* sub, std::function<int()> f) {
        sub->callback([&action, f] { action = f; });
    };

    auto* sumset_cmd = app.add_subcommand("sumset", "A+B in Z or Z/nZ");
    add_set_options(sumset_cmd, c, true, true);
    bind(sumset_cmd, [&] { return cmd_sumset(c, out); });

    auto* conv_cmd = app.add_subcommand("conv", "representation counts 1_A*1_B");
    add_set_options(conv_cmd, c, true, true);
    bind(conv_cmd, [&] { return cmd_conv(c, out); });

    auto* pop_cmd = app.add_subcommand("popdouble", "truncated sum and delta for S");
    add_set_options(pop_cmd, c, false, false);
    pop_cmd->add_option("--t", c.t, "truncation level")->required()->check(CLI::PositiveNumber);
    bind(pop_cmd, [&] { return cmd_popdouble(c, out); });

    auto* pollard_cmd = app.add_subcommand("pollard", "Pollard's bound in Z/pZ");
    add_set_options(pollard_cmd, c, true, true);
    pollard_cmd->add_option("--t", c.t, "truncation level")->required();
    bind(pollard_cmd, [&] { return cmd_pollard(c, out); });

    auto* freiman_cmd = app.add_subcommand("freiman", "small-doubling progression cover");
    add_set_options(freiman_cmd, c, false, false);
    bind(freiman_cmd, [&] { return cmd_freiman(c, out); });

    auto* api_cmd = app.add_subcommand("ap-intersect", "intersection of two progressions mod p");
    api_cmd->add_option("--mod", c.modulus, "prime modulus")->required();
    api_cmd->add_option("--p", c.ap_p, "start,step,length")->delimiter(',')->expected(3)->required();
    api_cmd->add_option("--q", c.ap_q, "start,step,length")->delimiter(',')->expected(3)->required();
    bind(api_cmd, [&] { return cmd_ap_intersect(c, out); });

    auto* wrap_cmd = app.add_subcommand("wrap", "fold S onto a cyclic group");
    add_set_options(wrap_cmd, c, false, false);
    wrap_cmd->add_option("--t", c.t, "truncation level")->required()->check(CLI::PositiveNumber);
    bind(wrap_cmd, [&] { return cmd_wrap(c, out); });

    auto* sub_cmd = app.add_subcommand("subgroup", "subgroup and cosets carrying A and B");
    add_set_options(sub_cmd, c, true, true);
    sub_cmd->add_option("--t", c.t_rational, "truncation level (rational)")->required();
    sub_cmd->add_option("--eta", c.eta, "eta (rational)")->required();
    bind(sub_cmd, [&] { return cmd_subgroup(c, out); });

    auto* structure_cmd = app.add_subcommand("structure", "structure recovery");
    structure_cmd->require_subcommand(1);
    auto* recover_cmd = structure_cmd->add_subcommand("recover", "progression covering S");
    add_set_options(recover_cmd, c, false, false);
    recover_cmd->add_option("--t", c.t, "truncation level")->required()->check(CLI::PositiveNumber);
    bind(recover_cmd, [&] { return cmd_recover(c, out); });

    auto* pk_cmd = app.add_subcommand("pk", "normalized miss probabilities p_k");
    pk_cmd->add_option("--kmax", c.kmax)->check(CLI::Range(2, 60));
    pk_cmd->add_option("--samples", c.samples)->check(CLI::PositiveNumber);
    pk_cmd->add_option("--seed", c.seed);
    pk_cmd->add_option("--exact-budget", c.exact_budget)->check(CLI::Range(-1, kMaxExactBudget));
    auto* csv_flag = pk_cmd->add_flag("--csv", c.csv, "CSV output (default)");
    pk_cmd->add_flag("--json", c.json, "JSON output")->excludes(csv_flag);
    pk_cmd->add_option("--count-forced-miss", c.count_forced_miss,
                       "count the always-missing element 1 (true|false)");
    bind(pk_cmd, [&] { return cmd_pk(c, out); });

    auto* miss_cmd = app.add_subcommand("miss", "exact miss distribution by enumeration");
    miss_cmd->add_option("--M", c.m)->check(CLI::Range(1, kMaxExactBudget));
    miss_cmd->add_option("--kmax", c.kmax)->check(CLI::Range(0, 60));
    miss_cmd->add_option("--condition", c.condition)
        ->check(CLI::IsMember({"none", "contains-one", "not-contains-one"}));
    bind(miss_cmd, [&] { return cmd_miss(c, out); });

    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo miss probability");
    mc_cmd->add_option("--k", c.k)->required()->check(CLI::NonNegativeNumber);
    mc_cmd->add_option("--samples", c.samples)->check(CLI::PositiveNumber);
    mc_cmd->add_option("--M", c.m_opt);
    mc_cmd->add_option("--seed", c.seed);
    mc_cmd->add_option("--condition", c.condition)
        ->check(CLI::IsMember({"none", "contains-one", "not-contains-one"}));
    bind(mc_cmd, [&] { return cmd_mc(c, out); });

    auto* tail_cmd = app.add_subcommand("tail", "tail bound past M");
    tail_cmd->add_option("--M", c.m)->required()->check(CLI::NonNegativeNumber);
    bind(tail_cmd, [&] { return cmd_tail(c, out); });

    auto* entropy_cmd = app.add_subcommand("entropy", "binary entropy and binomial estimates");
    entropy_cmd->require_subcommand(1);
    auto* echeck = entropy_cmd->add_subcommand("check", "sweep both binomial estimates");
    echeck->add_option("--nmax", c.nmax)->check(CLI::Range(0, 5000));
    bind(echeck, [&] { return cmd_entropy_check(c, out, err); });
    auto* eh = entropy_cmd->add_subcommand("h", "H(t)");
    eh->add_option("--t", c.t_real)->required();
    bind(eh, [&] {
        emit(out, {{"t", c.t_real}, {"H", round12(binary_entropy(c.t_real))}});
        return static_cast<int>(kExitOk);
    });
    auto* esand = entropy_cmd->add_subcommand("sandwich", "bounds on C(n,k)");
    esand->add_option("--n", c.n)->required();
    esand->add_option("--k", c.k)->required();
    bind(esand, [&] {
        const auto check = binom_sandwich(c.n, c.k);
        emit(out, to_json(check));
        return check.holds ? kExitOk : kExitViolation;
    });
    auto* etail = entropy_cmd->add_subcommand("tail", "bound on sum_{j <= delta n} C(n,j)");
    etail->add_option("--n", c.n)->required();
    etail->add_option("--delta", c.delta, "rational in [0, 1/2]")->required();
    bind(etail, [&] {
        const auto check = binom_tail(c.n, parse_rational(c.delta));
        emit(out, to_json(check));
        return check.holds ? kExitOk : kExitViolation;
    });

    auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
    verify_cmd->add_flag("--all", c.all, "every suite (default)");
    verify_cmd->add_option("--suite", c.suites,
                           "pollard, equality, freiman, ap-intersect, wrap, recover, entropy, tail, "
                           "shift, pk");
    verify_cmd->add_option("--pollard-pmax", c.verify.pollard_pmax)->check(CLI::Range(2, 17));
    verify_cmd->add_option("--apintersect-pmax", c.verify.apintersect_pmax)->check(CLI::Range(2, 63));
    verify_cmd->add_option("--freiman-nmax", c.verify.freiman_nmax)->check(CLI::Range(1, 20));
    verify_cmd->add_option("--samples", c.verify.samples)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", c.verify.seed);
    verify_cmd->add_option("--instances", c.verify.recover_random, "randomized recovery instances");
    bind(verify_cmd, [&] {
        c.verify.wrap_random = c.verify.recover_random;
        return cmd_verify(c, out, err);
    });

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (c.threads > 0) set_thread_limit(c.threads);
        return action ? action() : kExitUsage;
    } catch (const ContractViolation& e) {
        err << "contract violated: " << e.what() << '\n';
        return kExitViolation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace sumsetlab
