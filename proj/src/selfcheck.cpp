#include "apds/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "apds/ap_sequence.hpp"
#include "apds/dsets.hpp"
#include "apds/error.hpp"
#include "apds/function.hpp"
#include "apds/large_sequence.hpp"
#include "apds/permutation.hpp"
#include "apds/poly_sequence.hpp"
#include "apds/text_index.hpp"

namespace apds {

namespace {

using Seq = std::vector<uint64_t>;
// first failure message, if any
using Verdict = std::optional<std::string>;

struct Counter {
    uint64_t checks = 0;
};

template <class A, class B>
Verdict expect_eq(Counter& c, const A& got, const B& want, const std::string& what) {
    ++c.checks;
    if (got == static_cast<A>(want)) return std::nullopt;
    std::ostringstream m;
    m << what << ": got " << got << ", expected " << want;
    return m.str();
}

#define APDS_CHECK(expr)              \
    do {                              \
        if (auto v_ = (expr)) return v_; \
    } while (0)

std::string show(const Seq& s) {
    std::ostringstream m;
    m << "n=" << s.size() << " [";
    for (size_t i = 0; i < s.size() && i < 64; ++i) m << (i ? " " : "") << s[i];
    if (s.size() > 64) m << " ...";
    m << "]";
    return m.str();
}

// relabel to [1..sigma] by first occurrence
Seq effective(Seq s) {
    std::map<uint64_t, uint64_t> id;
    for (auto& x : s) x = id.emplace(x, id.size() + 1).first->second;
    return s;
}

// relabel to the permutation of ranks
Seq normalize_perm(const Seq& s) {
    Seq order(s.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](uint64_t a, uint64_t b) { return s[a] < s[b]; });
    Seq p(s.size());
    for (uint64_t r = 0; r < order.size(); ++r) p[order[r]] = r + 1;
    return p;
}

// Drops chunks of the input while the failure persists.
Seq shrink(Seq s, const std::function<Seq(const Seq&)>& normalize, const std::function<Verdict(const Seq&)>& fails) {
    for (uint64_t chunk = std::max<uint64_t>(1, s.size() / 2); chunk >= 1; chunk /= 2) {
        bool progress = true;
        while (progress && s.size() > 1) {
            progress = false;
            for (uint64_t at = 0; at < s.size() && s.size() > 1; at += chunk) {
                Seq t;
                t.insert(t.end(), s.begin(), s.begin() + at);
                t.insert(t.end(), s.begin() + std::min<uint64_t>(s.size(), at + chunk), s.end());
                if (t.empty()) continue;
                t = normalize(t);
                if (fails(t)) {
                    s = std::move(t);
                    progress = true;
                }
            }
        }
        if (chunk == 1) break;
    }
    return s;
}

Seq random_sequence(std::mt19937_64& rng, uint64_t n) {
    const uint64_t sigma = 1 + rng() % std::min<uint64_t>(n, uint64_t{1} << (1 + rng() % 10));
    Seq s(n);
    if (rng() % 2) {
        for (auto& x : s) x = 1 + rng() % sigma;
    } else {
        std::vector<double> w(sigma);
        const double e = 0.5 + static_cast<double>(rng() % 16) / 10.0;
        for (uint64_t r = 0; r < sigma; ++r) w[r] = std::pow(static_cast<double>(r + 1), -e);
        std::discrete_distribution<uint64_t> d(w.begin(), w.end());
        for (auto& x : s) x = d(rng) + 1;
    }
    return effective(s);
}

// shuffled, or a few interleaved monotone runs
Seq random_permutation(std::mt19937_64& rng, uint64_t n) {
    Seq p(n);
    std::iota(p.begin(), p.end(), 1);
    if (rng() % 3 == 0) {
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    }
    const uint64_t runs = 1 + rng() % std::max<uint64_t>(1, std::min<uint64_t>(n, 8));
    std::vector<Seq> parts(runs);
    for (uint64_t v = 1; v <= n; ++v) parts[rng() % runs].push_back(v);
    for (auto& r : parts)
        if (rng() % 2) std::reverse(r.begin(), r.end());
    std::vector<uint64_t> next(runs, 0);
    Seq slots;
    for (uint64_t r = 0; r < runs; ++r) slots.insert(slots.end(), parts[r].size(), r);
    if (rng() % 2) std::shuffle(slots.begin(), slots.end(), rng);
    for (uint64_t i = 0; i < n; ++i) p[i] = parts[slots[i]][next[slots[i]]++];
    return p;
}

// Checks access/rank/select of q against s, including rank/select duality.
template <class Q>
Verdict check_rank_select(Counter& c, const Seq& s, const Q& q, const std::string& name, uint64_t fault = 0) {
    const uint64_t sigma = *std::max_element(s.begin(), s.end());
    std::vector<uint64_t> rank(sigma + 1, 0);
    for (uint64_t i = 1; i <= s.size(); ++i) {
        APDS_CHECK(expect_eq(c, q.access(i), s[i - 1], name + " access(" + std::to_string(i) + ")"));
        const uint64_t a = s[i - 1];
        ++rank[a];
        APDS_CHECK(expect_eq(c, q.select(a, rank[a]), i, name + " select(" + std::to_string(a) + "," + std::to_string(rank[a]) + ")"));
    }
    std::vector<uint64_t> r(sigma + 1, 0);
    for (uint64_t i = 0; i <= s.size(); ++i) {
        if (i > 0) ++r[s[i - 1]];
        for (uint64_t a = 1; a <= sigma; ++a)
            APDS_CHECK(expect_eq(c, q.rank(a, i) + fault, r[a],
                                 name + " rank(" + std::to_string(a) + "," + std::to_string(i) + ")"));
    }
    for (uint64_t a = 1; a <= sigma; ++a) {
        ++c.checks;
        try {
            q.select(a, rank[a] + 1);
            return name + " select past the last occurrence of " + std::to_string(a) + " did not throw";
        } catch (const NotFound&) {
        }
    }
    return std::nullopt;
}

Verdict check_sequence(Counter& c, const Seq& s, bool fault, uint64_t block) {
    for (Variant v : {Variant::kFastSelect, Variant::kFastAccess}) {
        ApOptions o;
        o.variant = v;
        APDS_CHECK(check_rank_select(c, s, ApSequence(s, o), "ApSequence", fault ? 1 : 0));
    }
    APDS_CHECK(check_rank_select(c, s, PolySequence(s), "PolySequence"));
    const uint64_t sigma = *std::max_element(s.begin(), s.end());
    for (Variant v : {Variant::kFastSelect, Variant::kFastAccess})
        APDS_CHECK(check_rank_select(c, s, LargeSequence(s, sigma, v), "LargeSequence"));
    APDS_CHECK(check_rank_select(c, s, BlockStore(s, block), "BlockStore(b=" + std::to_string(block) + ")"));
    return std::nullopt;
}

Verdict check_permutation(Counter& c, const Seq& p, uint64_t step) {
    const uint64_t n = p.size();
    Seq inv(n + 1);
    for (uint64_t i = 1; i <= n; ++i) inv[p[i - 1]] = i;
    for (RunKind kind : {RunKind::kInterleavedGeneral, RunKind::kInterleavedStrict, RunKind::kContiguousGeneral,
                         RunKind::kContiguousStrict}) {
        const std::string name(run_kind_name(kind));
        const RunDecomposition d = decompose_runs(p, kind);
        const double h = d.entropy(), rho = static_cast<double>(d.rho()), nn = static_cast<double>(n);
        ++c.checks;
        if (h > std::log2(rho) + 1e-9) return name + ": H(runs) exceeds lg rho";
        ++c.checks;
        if (nn * h + 1e-6 < (rho - 1) * std::log2(nn)) return name + ": nH(runs) below (rho-1) lg n";
        PermOptions o;
        o.kind = kind;
        o.power_step = step;
        const RunPermutation q(p, o);
        for (uint64_t i = 1; i <= n; ++i) {
            APDS_CHECK(expect_eq(c, q.apply(i), p[i - 1], name + " apply(" + std::to_string(i) + ")"));
            APDS_CHECK(expect_eq(c, q.inverse(i), inv[i], name + " inverse(" + std::to_string(i) + ")"));
        }
        if (kind != RunKind::kInterleavedGeneral) continue;
        for (uint64_t i = 1; i <= n; ++i) {
            uint64_t x = i;
            for (int64_t k = 0; k <= static_cast<int64_t>(std::min<uint64_t>(n, 64)); ++k) {
                uint64_t apps = 0;
                APDS_CHECK(expect_eq(c, q.power(i, k, &apps), x, "power(" + std::to_string(i) + "," + std::to_string(k) + ")"));
                ++c.checks;
                if (apps > 2 * step) return "power walk of " + std::to_string(apps) + " applications exceeds 2t";
                x = p[x - 1];
            }
            x = i;
            for (int64_t k = 0; k >= -static_cast<int64_t>(std::min<uint64_t>(n, 64)); --k) {
                APDS_CHECK(expect_eq(c, q.power(i, k), x, "power(" + std::to_string(i) + "," + std::to_string(k) + ")"));
                x = inv[x];
            }
        }
    }
    return std::nullopt;
}

Verdict check_function(Counter& c, const Seq& f) {
    const uint64_t sigma = *std::max_element(f.begin(), f.end());
    std::vector<Seq> pre(sigma + 1);
    for (uint64_t i = 1; i <= f.size(); ++i) pre[f[i - 1]].push_back(i);
    for (FunctionMode mode : {FunctionMode::kDirect, FunctionMode::kRunsInterleaved, FunctionMode::kRunsContiguous}) {
        const std::string name(function_mode_name(mode));
        FunctionOptions o;
        o.mode = mode;
        const CompressedFunction q(f, o);
        for (uint64_t i = 1; i <= f.size(); ++i) {
            APDS_CHECK(expect_eq(c, q.eval(i), f[i - 1], name + " eval(" + std::to_string(i) + ")"));
            if (mode == FunctionMode::kDirect) continue;
            const BitVector& b = q.delimiters();
            const uint64_t via = b.rank1(b.select0(q.permutation().apply(i)));
            APDS_CHECK(expect_eq(c, via, f[i - 1], name + " rank1(select0(pi(" + std::to_string(i) + ")))"));
        }
        for (uint64_t a = 1; a <= sigma; ++a) {
            APDS_CHECK(expect_eq(c, q.preimage_size(a), pre[a].size(), name + " preimage_size(" + std::to_string(a) + ")"));
            ++c.checks;
            if (q.preimage(a, true) != pre[a]) return name + " preimage(" + std::to_string(a) + ") differs";
        }
    }
    return std::nullopt;
}

struct NaiveDsu {
    Seq parent, low;
    explicit NaiveDsu(uint64_t n) : parent(n + 1), low(n + 1) {
        std::iota(parent.begin(), parent.end(), 0);
        std::iota(low.begin(), low.end(), 0);
    }
    uint64_t root(uint64_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(uint64_t a, uint64_t b) {
        a = root(a);
        b = root(b);
        if (a == b) return;
        parent[b] = a;
        low[a] = std::min(low[a], low[b]);
    }
    uint64_t find(uint64_t x) { return low[root(x)]; }
};

Verdict check_dsets(Counter& c, std::mt19937_64& rng, uint64_t n) {
    const double eps = rng() % 2 ? 0.1 : 1.0;
    DisjointSetCollection d(n, eps);
    NaiveDsu naive(n);
    double h = d.entropy();
    for (uint64_t op = 0; op < 4 * n; ++op) {
        const uint64_t i = 1 + rng() % n, j = 1 + rng() % n;
        d.unite(i, j);
        naive.unite(i, j);
        ++c.checks;
        if (d.entropy() > h + 1e-9) return "entropy increased after union(" + std::to_string(i) + "," + std::to_string(j) + ")";
        h = d.entropy();
        if (op % 16 == 0)
            for (uint64_t x = 1; x <= n; ++x)
                APDS_CHECK(expect_eq(c, d.find(x), naive.find(x), "find(" + std::to_string(x) + ") after op " + std::to_string(op)));
    }
    for (uint64_t x = 1; x <= n; ++x) APDS_CHECK(expect_eq(c, d.find(x), naive.find(x), "final find(" + std::to_string(x) + ")"));
    const double lglg = n < 4 ? 0.0 : std::log(std::log2(static_cast<double>(n)));
    const uint64_t bound = static_cast<uint64_t>(std::ceil(lglg / std::log1p(eps))) + 1;
    ++c.checks;
    if (d.rebuild_count() > bound)
        return std::to_string(d.rebuild_count()) + " rebuilds exceed the bound " + std::to_string(bound);
    return std::nullopt;
}

Verdict check_text_index(Counter& c, std::mt19937_64& rng, const Seq& text) {
    FmOptions o;
    o.k_context = rng() % 3;
    o.sample_rate = rng() % 2 ? 0 : 1 + rng() % 8;
    const FmIndex f(text, o);
    const uint64_t n = text.size();
    const uint64_t sigma = *std::max_element(text.begin(), text.end());
    for (int q = 0; q < 64; ++q) {
        const uint64_t len = 1 + rng() % 8;
        Seq p;
        if (len > n || rng() % 4 == 0) {
            for (uint64_t k = 0; k < len; ++k) p.push_back(1 + rng() % (sigma + 1));
        } else {
            const uint64_t at = rng() % (n - len + 1);
            p.assign(text.begin() + at, text.begin() + at + len);
        }
        Seq want;
        for (uint64_t i = 0; i + p.size() <= n; ++i)
            if (std::equal(p.begin(), p.end(), text.begin() + i)) want.push_back(i + 1);
        APDS_CHECK(expect_eq(c, f.count(p), want.size(), "count of " + show(p)));
        ++c.checks;
        if (f.locate(p) != want) return "locate of " + show(p) + " differs";
        const uint64_t l = 1 + rng() % n, r = l + rng() % (n - l + 1);
        ++c.checks;
        if (f.extract(l, r) != Seq(text.begin() + l - 1, text.begin() + r))
            return "extract(" + std::to_string(l) + "," + std::to_string(r) + ") differs";
    }
    return std::nullopt;
}

template <class T>
Verdict round_trip(Counter& c, const T& x, const std::string& name, T* out) {
    Writer w;
    x.serialize(w);
    Reader r(w.data());
    *out = T::load(r);
    ++c.checks;
    if (!r.done()) return name + ": load left trailing bytes";
    Writer w2;
    out->serialize(w2);
    ++c.checks;
    if (w2.data() != w.data()) return name + ": re-serialized bytes differ";
    return std::nullopt;
}

Verdict check_serialization(Counter& c, std::mt19937_64& rng, const Seq& s, const Seq& p) {
    const uint64_t n = s.size();
    ApSequence a(s), a2;
    APDS_CHECK(round_trip(c, a, "ApSequence", &a2));
    BlockStore b(s, 1 + rng() % 4), b2;
    APDS_CHECK(round_trip(c, b, "BlockStore", &b2));
    PermOptions po;
    po.kind = static_cast<RunKind>(rng() % 4);
    po.power_step = 1 + rng() % 8;
    RunPermutation q(p, po), q2;
    APDS_CHECK(round_trip(c, q, "RunPermutation", &q2));
    FunctionOptions fo;
    fo.mode = static_cast<FunctionMode>(rng() % 3);
    CompressedFunction f(s, fo), f2;
    APDS_CHECK(round_trip(c, f, "CompressedFunction", &f2));
    FmIndex x(s), x2;
    APDS_CHECK(round_trip(c, x, "FmIndex", &x2));
    const uint64_t sigma = a.alphabet_size();
    for (int k = 0; k < 200; ++k) {
        const uint64_t i = 1 + rng() % n, sym = 1 + rng() % sigma;
        APDS_CHECK(expect_eq(c, a2.rank(sym, i), a.rank(sym, i), "loaded ApSequence rank"));
        APDS_CHECK(expect_eq(c, b2.rank(sym, i), b.rank(sym, i), "loaded BlockStore rank"));
        APDS_CHECK(expect_eq(c, q2.inverse(i), q.inverse(i), "loaded RunPermutation inverse"));
        const int64_t e = static_cast<int64_t>(rng() % 9) - 4;
        APDS_CHECK(expect_eq(c, q2.power(i, e), q.power(i, e), "loaded RunPermutation power"));
        APDS_CHECK(expect_eq(c, f2.eval(i), f.eval(i), "loaded CompressedFunction eval"));
        APDS_CHECK(expect_eq(c, x2.count(Seq{sym}), x.count(Seq{sym}), "loaded FmIndex count"));
    }
    return std::nullopt;
}

using Runner = std::function<Verdict(Counter&, std::mt19937_64&, uint64_t n)>;

SuiteResult run_suite(const std::string& name, const SelfcheckOptions& o, uint64_t salt, const Runner& body) {
    SuiteResult r;
    r.name = name;
    std::mt19937_64 rng(o.seed * 0x9e3779b97f4a7c15ULL + salt);
    const uint64_t max_n = std::max<uint64_t>(1, o.max_n);
    for (uint64_t it = 0; it < o.iters; ++it) {
        // small sizes first, then anything up to max_n
        const uint64_t n = 1 + (it < 4 ? rng() % std::min<uint64_t>(max_n, 8) : rng() % max_n);
        Counter c;
        Verdict v;
        try {
            v = body(c, rng, n);
        } catch (const std::exception& e) {
            v = std::string("unexpected exception: ") + e.what();
        }
        ++r.cases;
        r.checks += c.checks;
        if (v) {
            ++r.failures;
            if (r.counterexample.empty()) r.counterexample = *v;
        }
    }
    return r;
}

// runs check on s, catching exceptions
Verdict guarded(const std::function<Verdict(Counter&, const Seq&)>& check, const Seq& s) {
    Counter c;
    try {
        return check(c, s);
    } catch (const std::exception& e) {
        return std::string("unexpected exception: ") + e.what();
    }
}

// Suite over generated inputs with shrinking on failure.
SuiteResult run_shrinking(const std::string& name, const SelfcheckOptions& o, uint64_t salt,
                          const std::function<Seq(std::mt19937_64&, uint64_t)>& gen,
                          const std::function<Seq(const Seq&)>& normalize,
                          const std::function<Verdict(Counter&, const Seq&)>& check) {
    Seq failing;
    SuiteResult r = run_suite(name, o, salt, [&](Counter& c, std::mt19937_64& rng, uint64_t n) -> Verdict {
        const Seq s = gen(rng, n);
        Verdict v;
        try {
            v = check(c, s);
        } catch (const std::exception& e) {
            v = std::string("unexpected exception: ") + e.what();
        }
        if (v && failing.empty()) failing = s;
        return v;
    });
    if (!failing.empty()) {
        const Seq small = shrink(failing, normalize, [&](const Seq& t) { return guarded(check, t); });
        r.counterexample = *guarded(check, small) + "; input " + show(small);
    }
    return r;
}

}  // namespace

std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& o) {
    std::vector<SuiteResult> out;
    uint64_t block = 1;
    out.push_back(run_shrinking(
        "sequences", o, 1,
        [&](std::mt19937_64& rng, uint64_t n) {
            block = 1 + rng() % 4;
            return random_sequence(rng, n);
        },
        effective, [&](Counter& c, const Seq& s) { return check_sequence(c, s, o.inject_fault, block); }));
    uint64_t step = 1;
    out.push_back(run_shrinking(
        "permutations", o, 2,
        [&](std::mt19937_64& rng, uint64_t n) {
            step = 1 + rng() % 8;
            return random_permutation(rng, n);
        },
        normalize_perm, [&](Counter& c, const Seq& p) { return check_permutation(c, p, step); }));
    out.push_back(run_shrinking("functions", o, 3, random_sequence, effective, check_function));
    out.push_back(run_suite("dsets", o, 4, [](Counter& c, std::mt19937_64& rng, uint64_t n) { return check_dsets(c, rng, n); }));
    out.push_back(run_suite("text_index", o, 5, [](Counter& c, std::mt19937_64& rng, uint64_t n) {
        return check_text_index(c, rng, random_sequence(rng, n));
    }));
    out.push_back(run_suite("serialization", o, 6, [](Counter& c, std::mt19937_64& rng, uint64_t n) {
        return check_serialization(c, rng, random_sequence(rng, n), random_permutation(rng, n));
    }));
    return out;
}

}  // namespace apds
