#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "dyadnet/discrepancy.hpp"
#include "dyadnet/formulas.hpp"
#include "dyadnet/haar.hpp"
#include "dyadnet/netgen.hpp"

namespace dyadnet::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSchema = "1";

struct SpecOpts {
    std::string family = "pa";
    int n = 0;
    std::string a, c, tri, c1, c2;
    std::string shift;
    bool symmetrized = false;
    std::string points_file;
};

struct CommonOpts {
    std::string out_path;
    std::string format = "json";
};

NetSpec make_spec(const SpecOpts& o) {
    if (o.n < 1) throw std::invalid_argument("--n must be >= 1");
    NetSpec s;
    s.family = family_from_string(o.family);
    s.n = o.n;
    s.shift = o.shift.empty() ? Bits(static_cast<std::size_t>(o.n), 0) : bits_from_string(o.shift);
    s.symmetrized = o.symmetrized;
    switch (s.family) {
        case Family::PA: s.a = bits_from_string(o.a); break;
        case Family::PC: s.c = bits_from_string(o.c); break;
        case Family::TRI: s.tri = bits_from_string(o.tri); break;
        case Family::CUSTOM:
            s.c1 = BitMatrix::from_string(o.n, o.c1);
            s.c2 = BitMatrix::from_string(o.n, o.c2);
            break;
    }
    s.validate();
    return s;
}

struct LoadedSet {
    DyadicPointSet pts;
    bool from_file = false;
    NetSpec spec;  // meaningful only when !from_file
};

LoadedSet load_points(const SpecOpts& o) {
    LoadedSet ls;
    if (!o.points_file.empty()) {
        std::ifstream in(o.points_file);
        if (!in) throw std::invalid_argument("cannot open points file '" + o.points_file + "'");
        ls.pts = read_point_dump(in);
        if (ls.pts.points.empty()) throw std::invalid_argument("points file holds no points");
        ls.from_file = true;
        return ls;
    }
    ls.spec = make_spec(o);
    ls.pts = generate(ls.spec);
    return ls;
}

void describe(ordered_json& j, const LoadedSet& ls, const SpecOpts& o) {
    if (ls.from_file) {
        j["source"] = o.points_file;
        j["resolution"] = ls.pts.resolution;
    } else {
        j["family"] = o.family;
        j["n"] = o.n;
        switch (ls.spec.family) {
            case Family::PA: j["a"] = bits_to_string(ls.spec.a); break;
            case Family::PC: j["c"] = bits_to_string(ls.spec.c); break;
            case Family::TRI: j["tri"] = bits_to_string(ls.spec.tri); break;
            case Family::CUSTOM:
                j["c1"] = ls.spec.c1.to_string();
                j["c2"] = ls.spec.c2.to_string();
                break;
        }
        j["shift"] = bits_to_string(ls.spec.shift);
        j["symmetrized"] = ls.spec.symmetrized;
    }
    j["points"] = ls.pts.size();
}

void emit(const std::string& doc, const CommonOpts& common, std::ostream& out) {
    if (common.out_path.empty()) {
        out << doc;
        return;
    }
    std::ofstream f(common.out_path);
    if (!f) throw std::invalid_argument("cannot open output file '" + common.out_path + "'");
    f << doc;
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

void add_spec_options(CLI::App* cmd, SpecOpts& o, bool with_points) {
    cmd->add_option("--family", o.family, "net family: pa, pc, tri, custom")
        ->check(CLI::IsMember({"pa", "pc", "tri", "custom"}));
    cmd->add_option("--n", o.n, "matrix size / resolution");
    cmd->add_option("--a", o.a, "PA column bits a_1..a_{n-1}, most significant index first");
    cmd->add_option("--c", o.c, "PC column bits c_2..c_n");
    cmd->add_option("--tri", o.tri, "TRI strictly-upper entries, row-major, n(n-1)/2 bits");
    cmd->add_option("--c1", o.c1, "custom C1, row-major 0/1 string of length n^2");
    cmd->add_option("--c2", o.c2, "custom C2, row-major 0/1 string of length n^2");
    cmd->add_option("--shift", o.shift, "digital shift bits sigma_1..sigma_n (default all zero)");
    cmd->add_flag("--symmetrized", o.symmetrized, "take the union with the reflected net");
    if (with_points)
        cmd->add_option("--points", o.points_file, "read a point-set dump instead of generating");
}

void add_common_options(CLI::App* cmd, CommonOpts& o, bool with_format = false) {
    cmd->add_option("--out", o.out_path, "write the document to a file instead of stdout");
    if (with_format)
        cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "dump"}));
}

std::string scale_label(const LoadedSet& ls) {
    if (ls.from_file) return "(N L2)^2";
    return ls.spec.symmetrized ? "(2^(n+1) L2)^2" : "(2^n L2)^2";
}

unsigned env_threads() {
    if (const char* v = std::getenv("DYADNET_THREADS")) {
        const long t = std::strtol(v, nullptr, 10);
        if (t >= 1 && t <= 256) return static_cast<unsigned>(t);
    }
    return 1;
}

Bits random_bits(std::mt19937_64& rng, int len) {
    Bits b(static_cast<std::size_t>(len));
    for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1u);
    return b;
}

// --------------------------------------------------------------------------
// verify suites
// --------------------------------------------------------------------------

struct VerifyState {
    long checked = 0;
    long failed = 0;
    std::vector<std::string> mismatches;  // first 64 are recorded verbatim

    void check(bool ok, const std::string& what) {
        ++checked;
        if (!ok) {
            ++failed;
            if (mismatches.size() < 64) mismatches.push_back(what);
        }
    }
};

std::vector<std::pair<Bits, Bits>> pa_cases(int n, int trials, std::mt19937_64& rng) {
    std::vector<std::pair<Bits, Bits>> cases;
    if (n <= 4) {
        for (unsigned av = 0; av < (1u << (n - 1)); ++av) {
            Bits a(static_cast<std::size_t>(n - 1));
            for (int i = 0; i < n - 1; ++i) a[i] = (av >> i) & 1u;
            for (unsigned sv = 0; sv < (1u << n); ++sv) {
                Bits s(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) s[i] = (sv >> i) & 1u;
                cases.emplace_back(a, s);
            }
        }
    } else {
        for (int t = 0; t < trials; ++t)
            cases.emplace_back(random_bits(rng, n - 1), random_bits(rng, n));
    }
    return cases;
}

std::string pa_tag(int n, const Bits& a, const Bits& s) {
    return "n=" + std::to_string(n) + " a=" + bits_to_string(a) + " shift=" + bits_to_string(s);
}

void verify_theorems(VerifyState& st, int n_max, int trials, std::mt19937_64& rng) {
    for (int n = 1; n <= n_max; ++n) {
        for (const auto& [a, s] : pa_cases(n, trials, rng)) {
            const auto pts = generate_pa_direct(n, a, s);
            const Rational w = warnock_l2_squared(pts);
            const Rational f = l2sq_pa(n, a, s);
            st.check(f == w, "l2sq-pa " + pa_tag(n, a, s) + ": formula " + to_fraction(f) +
                                 " != warnock " + to_fraction(w));
            const Rational pv = parseval_l2_squared(pts, n) * pow2(2 * n);
            st.check(pv == w, "parseval " + pa_tag(n, a, s) + ": " + to_fraction(pv) +
                                  " != warnock " + to_fraction(w));
            if (n <= 7) {
                const Rational ws = warnock_l2_squared(symmetrize(pts));
                const Rational fs = l2sq_sym_pa(n, a, s);
                st.check(fs == ws, "l2sq-sym-pa " + pa_tag(n, a, s) + ": formula " + to_fraction(fs) +
                                       " != warnock " + to_fraction(ws));
            }
            if (n >= 2) {
                NetSpec pc;
                pc.family = Family::PC;
                pc.n = n;
                pc.c = a;
                pc.shift = s;
                const Rational wc = warnock_l2_squared(generate(pc));
                const Rational fc = l2sq_pc(n, a, s);
                st.check(fc == wc, "l2sq-pc " + pa_tag(n, a, s) + ": formula " + to_fraction(fc) +
                                       " != warnock " + to_fraction(wc));
            }
            int weight = 0;
            for (auto v : a) weight += v;
            st.check(l2sq_pa(n, a, Bits(static_cast<std::size_t>(n), 0)) ==
                         l2sq_pa_unshifted(n, weight),
                     "unshifted-weight n=" + std::to_string(n) + " a=" + bits_to_string(a));
        }
        if (n <= 5) {
            for (const Bits& a : {Bits(static_cast<std::size_t>(n - 1), 0),
                                  Bits(static_cast<std::size_t>(n - 1), 1)}) {
                Rational mean(0);
                for (unsigned sv = 0; sv < (1u << n); ++sv) {
                    Bits s(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i) s[i] = (sv >> i) & 1u;
                    mean += l2sq_pa(n, a, s);
                }
                mean /= static_cast<unsigned long>(1u << n);
                st.check(mean == l2sq_pa_shift_average(n),
                         "shift-average n=" + std::to_string(n) + " a=" + bits_to_string(a));
            }
        }
        for (int z = 0; z <= n; ++z) {
            Bits s(static_cast<std::size_t>(n), 1);
            for (int i = 0; i < z; ++i) s[i] = 0;
            st.check(l2sq_hammersley_shifted(n, z) ==
                         l2sq_pa(n, Bits(static_cast<std::size_t>(n - 1), 0), s),
                     "hammersley n=" + std::to_string(n) + " z=" + std::to_string(z));
        }
    }
}

void verify_propositions(VerifyState& st, int n_max, int trials, std::mt19937_64& rng) {
    for (int n = 1; n <= n_max; ++n) {
        auto cases = pa_cases(n, std::max(2, trials / 8), rng);
        if (n <= 4 && cases.size() > 24) {
            // exhaustive would repeat work pointlessly here; thin it out
            std::vector<std::pair<Bits, Bits>> thin;
            for (std::size_t i = 0; i < cases.size(); i += cases.size() / 24 + 1)
                thin.push_back(cases[i]);
            cases = std::move(thin);
        }
        for (const auto& [a, s] : cases) {
            const auto pts = generate_pa_direct(n, a, s);
            const auto spts = symmetrize(pts);
            for (int j1 = -1; j1 <= n; ++j1)
                for (int j2 = -1; j2 <= n; ++j2)
                    for (std::uint64_t m1 = 0; m1 < (1ULL << std::max(0, j1)); ++m1)
                        for (std::uint64_t m2 = 0; m2 < (1ULL << std::max(0, j2)); ++m2) {
                            const HaarIndex idx{j1, j2, m1, m2};
                            const Rational g = haar_coefficient(pts, idx);
                            const Rational cse = case_coefficient_pa(n, a, s, idx);
                            st.check(g == cse, "coefficient " +
                                                   std::string(region_name(classify_region(j1, j2, n))) +
                                                   " " + pa_tag(n, a, s) + " j=(" + std::to_string(j1) +
                                                   "," + std::to_string(j2) + ") m=(" +
                                                   std::to_string(m1) + "," + std::to_string(m2) + ")");
                            const Rational gs = haar_coefficient(spts, idx);
                            const Rational cs = sym_case_coefficient_pa(n, a, s, idx);
                            st.check(gs == cs, "sym-coefficient " +
                                                   std::string(region_name(classify_region(j1, j2, n))) +
                                                   " " + pa_tag(n, a, s) + " j=(" + std::to_string(j1) +
                                                   "," + std::to_string(j2) + ")");
                        }
        }
    }
}

void verify_lemmas(VerifyState& st, int n_max, int trials, std::mt19937_64& rng) {
    for (int n = 1; n <= n_max; ++n) {
        auto cases = pa_cases(n, std::max(2, trials / 8), rng);
        if (cases.size() > 16) cases.resize(16);
        for (const auto& [a, s] : cases) {
            for (int r = 1; r <= 13; ++r) {
                const auto reg = static_cast<Region>(r);
                st.check(region_parseval_sum(n, a, s, reg, SumMethod::Closed) ==
                             region_parseval_sum(n, a, s, reg, SumMethod::Direct),
                         std::string("region-sum ") + region_name(reg) + " " + pa_tag(n, a, s));
                st.check(sym_region_parseval_sum(n, a, s, reg, SumMethod::Closed) ==
                             sym_region_parseval_sum(n, a, s, reg, SumMethod::Direct),
                         std::string("sym-region-sum ") + region_name(reg) + " " + pa_tag(n, a, s));
            }
        }
    }
}

void verify_audit(VerifyState& st, int n_max, int trials, std::mt19937_64& rng) {
    for (int n = std::min(3, n_max); n <= n_max; ++n) {
        for (int t = 0; t < std::max(2, trials / 8); ++t) {
            const Bits a = random_bits(rng, n - 1);
            const Bits s = random_bits(rng, n);
            const auto audit = coefficient_bound_audit(n, a, s);
            st.check(audit.exact_branches_ok(), "audit " + pa_tag(n, a, s));
        }
    }
}

void verify_nets(VerifyState& st, int n_max, int trials, std::mt19937_64& rng) {
    for (int n = 1; n <= n_max; ++n) {
        for (const auto& [a, s] : pa_cases(n, trials, rng)) {
            NetSpec spec;
            spec.family = Family::PA;
            spec.n = n;
            spec.a = a;
            spec.shift = s;
            auto [c1, c2] = build_generators(spec);
            st.check(is_0n2_net(c1, c2, NetCheck::Rank), "net-rank " + pa_tag(n, a, s));
            st.check(is_0n2_net(c1, c2, NetCheck::Counting), "net-count " + pa_tag(n, a, s));
            auto direct = generate_pa_direct(n, a, s).points;
            auto matrix = generate_points(c1, c2, s).points;
            std::sort(direct.begin(), direct.end());
            std::sort(matrix.begin(), matrix.end());
            st.check(direct == matrix, "route " + pa_tag(n, a, s));
            // symmetrized = union with the complement-shifted net
            auto sym = symmetrize(generate_pa_direct(n, a, s)).points;
            auto uni = generate_pa_direct(n, a, s).points;
            auto flip = generate_pa_direct(n, a, complement_shift(s)).points;
            uni.insert(uni.end(), flip.begin(), flip.end());
            std::sort(sym.begin(), sym.end());
            std::sort(uni.begin(), uni.end());
            st.check(sym == uni, "symmetrize-union " + pa_tag(n, a, s));
        }
        // PC and TRI families are (0,n,2)-nets as well
        for (int t = 0; t < std::max(2, trials / 8); ++t) {
            NetSpec pc;
            pc.family = Family::PC;
            pc.n = n;
            pc.c = random_bits(rng, n - 1);
            pc.shift = Bits(static_cast<std::size_t>(n), 0);
            auto [c1, c2] = build_generators(pc);
            st.check(is_0n2_net(c1, c2, NetCheck::Rank) && is_0n2_net(c1, c2, NetCheck::Counting),
                     "net pc n=" + std::to_string(n) + " c=" + bits_to_string(pc.c));
            NetSpec tri;
            tri.family = Family::TRI;
            tri.n = n;
            tri.tri = random_bits(rng, n * (n - 1) / 2);
            tri.shift = Bits(static_cast<std::size_t>(n), 0);
            auto [d1, d2] = build_generators(tri);
            st.check(is_0n2_net(d1, d2, NetCheck::Rank) && is_0n2_net(d1, d2, NetCheck::Counting),
                     "net tri n=" + std::to_string(n) + " tri=" + bits_to_string(tri.tri));
        }
    }
}

// --------------------------------------------------------------------------
// subcommands
// --------------------------------------------------------------------------

int cmd_gen(const SpecOpts& so, const CommonOpts& common, std::ostream& out) {
    const LoadedSet ls = load_points(so);
    if (common.format == "dump") {
        std::ostringstream ss;
        write_point_dump(ls.pts, ss);
        emit(ss.str(), common, out);
        return 0;
    }
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "gen";
    describe(j, ls, so);
    j["resolution"] = ls.pts.resolution;
    auto pts = ordered_json::array();
    for (const auto& pt : ls.pts.points) pts.push_back({pt.x, pt.y});
    j["coordinates"] = std::move(pts);
    emit(dump_json(j), common, out);
    return 0;
}

int cmd_l2(const SpecOpts& so, const CommonOpts& common, const std::string& method,
           std::ostream& out) {
    const LoadedSet ls = load_points(so);
    Rational value;
    if (method == "warnock") {
        value = warnock_l2_squared(ls.pts);
    } else if (method == "parseval") {
        const Rational nn(static_cast<unsigned long>(ls.pts.size()));
        value = parseval_l2_squared(ls.pts, ls.pts.resolution) * nn * nn;
    } else {  // formula
        if (ls.from_file)
            throw std::invalid_argument("--method formula needs a net family, not a points file");
        const NetSpec& s = ls.spec;
        if (s.family == Family::PA)
            value = s.symmetrized ? l2sq_sym_pa(s.n, s.a, s.shift) : l2sq_pa(s.n, s.a, s.shift);
        else if (s.family == Family::PC && !s.symmetrized)
            value = l2sq_pc(s.n, s.c, s.shift);
        else
            throw std::invalid_argument(
                "--method formula covers pa, symmetrized pa and pc; use warnock or parseval");
    }
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "l2";
    describe(j, ls, so);
    j["method"] = method;
    j["scale"] = scale_label(ls);
    j["value"] = to_fraction(value);
    j["unscaled_value"] = to_fraction(value / (Rational(static_cast<unsigned long>(ls.pts.size())) *
                                               Rational(static_cast<unsigned long>(ls.pts.size()))));
    emit(dump_json(j), common, out);
    return 0;
}

int cmd_star(const SpecOpts& so, const CommonOpts& common, std::ostream& out) {
    const LoadedSet ls = load_points(so);
    const Rational star = star_discrepancy(ls.pts);
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "star";
    describe(j, ls, so);
    j["value"] = to_fraction(star);
    const Rational scaled = star * Rational(static_cast<unsigned long>(ls.pts.size()));
    j["n_scaled_value"] = to_fraction(scaled);
    if (!ls.from_file && !ls.spec.symmetrized) {
        const Rational bound = frac(ls.spec.n, 3) + frac(19, 3);
        j["net_bound"] = to_fraction(bound);
        j["within_net_bound"] = scaled <= bound;
    }
    emit(dump_json(j), common, out);
    return 0;
}

int cmd_lp_mc(const SpecOpts& so, const CommonOpts& common, double p, std::uint64_t samples,
              std::uint64_t seed, unsigned threads, std::ostream& out) {
    const LoadedSet ls = load_points(so);
    const McEstimate est = lp_discrepancy_mc(ls.pts, p, samples, seed, threads);
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "lp-mc";
    describe(j, ls, so);
    j["p"] = p;
    j["samples"] = samples;
    j["seed"] = seed;
    j["estimate"] = est.estimate;
    j["std_error"] = est.std_error;
    emit(dump_json(j), common, out);
    return 0;
}

int cmd_haar(const SpecOpts& so, const CommonOpts& common, bool dump, int jmax, int j1, int j2,
             std::uint64_t m1, std::uint64_t m2, const std::string& method, std::ostream& out) {
    const LoadedSet ls = load_points(so);
    if (dump) {
        const int top = jmax >= -1 ? jmax : ls.pts.resolution - 1;
        if (top > 12) throw std::invalid_argument("--jmax limited to 12 (4^jmax lines)");
        std::ostringstream ss;
        for (int u = -1; u <= top; ++u)
            for (int v = -1; v <= top; ++v)
                for (std::uint64_t w1 = 0; w1 < (1ULL << std::max(0, u)); ++w1)
                    for (std::uint64_t w2 = 0; w2 < (1ULL << std::max(0, v)); ++w2)
                        ss << u << " " << v << " " << w1 << " " << w2 << " "
                           << to_fraction(haar_coefficient(ls.pts, {u, v, w1, w2})) << "\n";
        emit(ss.str(), common, out);
        return 0;
    }
    const HaarIndex idx{j1, j2, m1, m2};
    Rational value;
    if (method == "generic") {
        value = haar_coefficient(ls.pts, idx);
    } else {
        if (ls.from_file || ls.spec.family != Family::PA)
            throw std::invalid_argument("--method case needs the pa family");
        value = ls.spec.symmetrized ? sym_case_coefficient_pa(ls.spec.n, ls.spec.a, ls.spec.shift, idx)
                                    : case_coefficient_pa(ls.spec.n, ls.spec.a, ls.spec.shift, idx);
    }
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "haar";
    describe(j, ls, so);
    j["j1"] = j1;
    j["j2"] = j2;
    j["m1"] = m1;
    j["m2"] = m2;
    if (!ls.from_file)
        j["region"] = region_name(classify_region(j1, j2, ls.spec.n));
    j["method"] = method;
    j["value"] = to_fraction(value);
    emit(dump_json(j), common, out);
    return 0;
}

int cmd_verify(const CommonOpts& common, const std::string& suite, int n_max, int trials,
               std::uint64_t seed, std::ostream& out) {
    if (n_max < 1) throw std::invalid_argument("--n-max must be >= 1");
    std::mt19937_64 rng(seed);
    VerifyState st;
    if (suite == "theorems" || suite == "all") verify_theorems(st, n_max, trials, rng);
    if (suite == "propositions" || suite == "all")
        verify_propositions(st, std::min(n_max, 6), trials, rng);
    if (suite == "lemmas" || suite == "all") verify_lemmas(st, std::min(n_max, 6), trials, rng);
    if (suite == "audit" || suite == "all") verify_audit(st, std::min(n_max, 6), trials, rng);
    if (suite == "nets" || suite == "all") verify_nets(st, n_max, trials, rng);

    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "verify";
    j["suite"] = suite;
    j["n_max"] = n_max;
    j["trials"] = trials;
    j["seed"] = seed;
    j["checked"] = st.checked;
    j["failed"] = st.failed;
    j["mismatches"] = st.mismatches;
    j["ok"] = st.failed == 0;
    emit(dump_json(j), common, out);
    return st.failed == 0 ? 0 : 2;
}

int cmd_sweep(const SpecOpts& so, const CommonOpts& common, const std::string& over,
              std::ostream& out) {
    if (so.n < 1) throw std::invalid_argument("--n must be >= 1");
    const int n = so.n;
    std::ostringstream csv;
    if (over == "shifts") {
        const Family fam = family_from_string(so.family);
        if (fam != Family::PA && fam != Family::PC)
            throw std::invalid_argument("sweep --over shifts supports pa and pc");
        const Bits weights = fam == Family::PA ? bits_from_string(so.a) : bits_from_string(so.c);
        if (weights.size() != static_cast<std::size_t>(n - 1))
            throw std::invalid_argument("weight vector must have length n-1");
        if (n > 24) throw std::invalid_argument("sweep over all 2^n shifts limited to n <= 24");
        csv << "shift,ell,L,value\n";
        for (std::uint64_t sv = 0; sv < (1ULL << n); ++sv) {
            Bits s(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) s[i] = (sv >> i) & 1u;
            const ShiftParams sp = shift_params(fam, n, weights, s);
            const Rational value = fam == Family::PA ? l2sq_pa(n, weights, s) : l2sq_pc(n, weights, s);
            csv << bits_to_string(s) << "," << sp.ell << "," << sp.L << "," << to_fraction(value)
                << "\n";
        }
    } else if (over == "weights") {
        csv << "weight,value\n";
        for (int w = 0; w <= n - 1; ++w)
            csv << w << "," << to_fraction(l2sq_pa_unshifted(n, w)) << "\n";
    } else {
        throw std::invalid_argument("sweep --over must be shifts or weights");
    }
    emit(csv.str(), common, out);
    return 0;
}

int cmd_search_shift(const SpecOpts& so, const CommonOpts& common, std::ostream& out) {
    if (so.n < 1) throw std::invalid_argument("--n must be >= 1");
    const int n = so.n;
    const Bits a = bits_from_string(so.a);
    if (a.size() != static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("--a must have length n-1");

    Bits best;
    Rational best_value;
    std::string mode;
    if (n <= 16) {
        mode = "exhaustive";
        for (std::uint64_t sv = 0; sv < (1ULL << n); ++sv) {
            Bits s(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) s[i] = (sv >> i) & 1u;
            const Rational v = l2sq_pa(n, a, s);
            if (best.empty() || v < best_value) {
                best = s;
                best_value = v;
            }
        }
    } else {
        mode = "balanced+greedy";
        best = balanced_shift(n, a);
        best_value = l2sq_pa(n, a, best);
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < n; ++i) {
                Bits s = best;
                s[i] ^= 1u;
                const Rational v = l2sq_pa(n, a, s);
                if (v < best_value) {
                    best = s;
                    best_value = v;
                    improved = true;
                }
            }
        }
    }
    const ShiftParams sp = shift_params(Family::PA, n, a, best);
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "search-shift";
    j["family"] = "pa";
    j["n"] = n;
    j["a"] = bits_to_string(a);
    j["mode"] = mode;
    j["shift"] = bits_to_string(best);
    j["ell"] = sp.ell;
    j["L"] = sp.L;
    j["scale"] = "(2^n L2)^2";
    j["value"] = to_fraction(best_value);
    j["shift_average"] = to_fraction(l2sq_pa_shift_average(n));
    emit(dump_json(j), common, out);
    return 0;
}

int cmd_counterexample(const CommonOpts& common, int n, std::ostream& out) {
    const BilykReport r = bilyk_counterexample_report(n);
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = "counterexample";
    j["n"] = r.n;
    j["a"] = std::string(static_cast<std::size_t>(n - 1), '1');
    j["mu_corner"] = to_fraction(r.mu_corner);
    j["one_over_N"] = to_fraction(r.one_over_n2);
    j["corner_small"] = r.corner_small;
    j["scale"] = "(2^n L2)^2";
    j["l2sq_scaled"] = to_fraction(r.l2sq_scaled);
    j["n_sq_ratio"] = r.n_sq_ratio;
    emit(dump_json(j), common, out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact L2-discrepancy toolkit for digital (0,n,2)-nets over GF(2)"};
    app.require_subcommand(1);

    SpecOpts so;
    CommonOpts common;

    auto* gen = app.add_subcommand("gen", "generate a net and print its point-set dump");
    CommonOpts gen_common;
    gen_common.format = "dump";
    add_spec_options(gen, so, true);
    add_common_options(gen, gen_common, true);

    auto* l2 = app.add_subcommand("l2", "exact (N L2)^2 by formula, warnock or parseval");
    std::string l2_method = "formula";
    add_spec_options(l2, so, true);
    add_common_options(l2, common);
    l2->add_option("--method", l2_method)->check(CLI::IsMember({"formula", "warnock", "parseval"}));

    auto* star = app.add_subcommand("star", "exact star discrepancy");
    add_spec_options(star, so, true);
    add_common_options(star, common);

    auto* lpmc = app.add_subcommand("lp-mc", "Monte-Carlo L_p discrepancy estimate");
    double lp_p = 2.0;
    std::uint64_t lp_samples = 100000, lp_seed = 0;
    unsigned lp_threads = env_threads();
    add_spec_options(lpmc, so, true);
    add_common_options(lpmc, common);
    lpmc->add_option("--p", lp_p, "exponent p in (1, inf)");
    lpmc->add_option("--samples", lp_samples);
    lpmc->add_option("--seed", lp_seed);
    lpmc->add_option("--threads", lp_threads);

    auto* haar = app.add_subcommand("haar", "Haar coefficients of the discrepancy function");
    bool haar_dump = false;
    int haar_jmax = -2, haar_j1 = -1, haar_j2 = -1;
    std::uint64_t haar_m1 = 0, haar_m2 = 0;
    std::string haar_method = "generic";
    add_spec_options(haar, so, true);
    add_common_options(haar, common);
    haar->add_flag("--dump", haar_dump, "dump all coefficients as 'j1 j2 m1 m2 num/den' lines");
    haar->add_option("--jmax", haar_jmax, "dump levels up to jmax (default resolution-1)");
    haar->add_option("--j1", haar_j1);
    haar->add_option("--j2", haar_j2);
    haar->add_option("--m1", haar_m1);
    haar->add_option("--m2", haar_m2);
    haar->add_option("--method", haar_method)->check(CLI::IsMember({"generic", "case"}));

    auto* verify = app.add_subcommand("verify", "machine-check the closed-form identities");
    std::string verify_suite = "all";
    int verify_nmax = 4, verify_trials = 32;
    std::uint64_t verify_seed = 7;
    add_common_options(verify, common);
    verify->add_option("--suite", verify_suite)
        ->check(CLI::IsMember({"theorems", "propositions", "lemmas", "audit", "nets", "all"}));
    verify->add_option("--n-max", verify_nmax,
                       "largest n (propositions/lemmas/audit cap themselves at 6)");
    verify->add_option("--trials", verify_trials);
    verify->add_option("--seed", verify_seed);

    auto* sweep = app.add_subcommand("sweep", "CSV table over shifts or weights");
    std::string sweep_over = "shifts";
    add_spec_options(sweep, so, false);
    add_common_options(sweep, common);
    sweep->add_option("--over", sweep_over)->check(CLI::IsMember({"shifts", "weights"}));

    auto* search = app.add_subcommand("search-shift", "find the best shift for a PA net");
    add_spec_options(search, so, false);
    add_common_options(search, common);

    auto* cx = app.add_subcommand("counterexample", "corner-coefficient report for a = (1,...,1)");
    int cx_n = 4;
    add_common_options(cx, common);
    cx->add_option("--n", cx_n);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        if (gen->parsed()) return cmd_gen(so, gen_common, out);
        if (l2->parsed()) return cmd_l2(so, common, l2_method, out);
        if (star->parsed()) return cmd_star(so, common, out);
        if (lpmc->parsed()) return cmd_lp_mc(so, common, lp_p, lp_samples, lp_seed, lp_threads, out);
        if (haar->parsed())
            return cmd_haar(so, common, haar_dump, haar_jmax, haar_j1, haar_j2, haar_m1, haar_m2,
                            haar_method, out);
        if (verify->parsed())
            return cmd_verify(common, verify_suite, verify_nmax, verify_trials, verify_seed, out);
        if (sweep->parsed()) return cmd_sweep(so, common, sweep_over, out);
        if (search->parsed()) return cmd_search_shift(so, common, out);
        if (cx->parsed()) return cmd_counterexample(common, cx_n, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << app.help();
    return 1;
}

}  // namespace dyadnet::cli
