#include "locus/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace locus {

Vec target_vector(const LinearCode& code, Target t) {
    if (t.kind == Target::Kind::Message) {
        if (t.index < 0 || t.index >= code.k()) throw std::out_of_range("target message index");
        Vec e(code.k(), 0);
        e[t.index] = code.field().one();
        return e;
    }
    if (t.index < 0 || t.index >= code.n()) throw std::out_of_range("target codeword index");
    return code.row(t.index);
}

Scalar target_truth(const LinearCode& code, const Vec& b, Target t) {
    return dot(code.field(), target_vector(code, t), b);
}

QueryDistribution QueryDistribution::make(std::vector<std::pair<std::vector<int>, Rat>> raw) {
    std::map<std::vector<int>, Rat> merged;
    for (auto& [set, w] : raw) {
        if (w < Rat(0)) throw std::invalid_argument("QueryDistribution: negative weight");
        if (w == Rat(0)) continue;
        std::sort(set.begin(), set.end());
        if (std::adjacent_find(set.begin(), set.end()) != set.end())
            throw std::invalid_argument("QueryDistribution: repeated index inside a set");
        merged[set] += w;
    }
    Rat total(0);
    for (const auto& [set, w] : merged) total += w;
    if (total != Rat(1))
        throw std::invalid_argument("QueryDistribution: weights sum to " + rat_str(total) +
                                    ", expected 1");
    QueryDistribution qd;
    for (auto& [set, w] : merged) qd.entries.emplace_back(set, w);
    return qd;
}

int QueryDistribution::max_query_size() const {
    std::size_t m = 0;
    for (const auto& [set, w] : entries) m = std::max(m, set.size());
    return static_cast<int>(m);
}

Rat QueryDistribution::coordinate_probability(int j) const {
    Rat p(0);
    for (const auto& [set, w] : entries)
        if (std::binary_search(set.begin(), set.end(), j)) p += w;
    return p;
}

Outcome canonical_decode(const LinearCode& code, Target t, const std::vector<int>& Q,
                         const Vec& z) {
    if (Q.size() != z.size()) throw std::invalid_argument("canonical_decode: |z| != |Q|");
    const Field& f = code.field();
    Mat rows;
    for (int j : Q) rows.push_back(code.row(j));
    if (!solve_linear(f, rows, z)) return Outcome::bottom();
    auto coeff = in_span(f, target_vector(code, t), Q, code);
    if (!coeff)
        throw std::logic_error("canonical_decode: completeness violation, v* not in span of "
                               "queried rows (target " + t.str() + ")");
    Scalar v = 0;
    for (std::size_t i = 0; i < Q.size(); ++i) v = f.add(v, f.mul((*coeff)[i], z[i]));
    return Outcome::of(v);
}

DecisionTree DecisionTree::single_leaf(Outcome label) {
    DecisionTree t;
    t.nodes.push_back(Node{true, -1, {}, label, false});
    return t;
}

static void validate_tree_walk(const DecisionTree& tree, const LinearCode& code, int q, int node,
                               int depth, std::vector<bool>& seen) {
    const auto& nd = tree.nodes.at(node);
    if (nd.leaf) {
        if (!nd.global_decode && !nd.label.is_bottom() && nd.label.value() >= code.field().size())
            throw std::invalid_argument("DecisionTree: leaf label outside the field");
        return;
    }
    if (depth >= q) throw std::invalid_argument("DecisionTree: more than q query layers");
    if (nd.query < 0 || nd.query >= code.n())
        throw std::invalid_argument("DecisionTree: query index out of range");
    if (seen[nd.query])
        throw std::invalid_argument("DecisionTree: index queried twice on a path");
    if (nd.children.size() != code.field().size())
        throw std::invalid_argument("DecisionTree: internal node needs one child per value");
    seen[nd.query] = true;
    for (int c : nd.children) validate_tree_walk(tree, code, q, c, depth + 1, seen);
    seen[nd.query] = false;
}

void validate_tree(const DecisionTree& tree, const LinearCode& code, int q) {
    if (tree.nodes.empty()) throw std::invalid_argument("DecisionTree: empty");
    // proper tree: nobody points at the root, no node has two parents
    std::vector<int> refs(tree.nodes.size(), 0);
    for (const auto& nd : tree.nodes)
        if (!nd.leaf)
            for (int c : nd.children) ++refs.at(c);
    if (refs[0] != 0) throw std::invalid_argument("DecisionTree: root has a parent");
    for (std::size_t i = 1; i < refs.size(); ++i)
        if (refs[i] > 1) throw std::invalid_argument("DecisionTree: node with two parents");
    std::vector<bool> seen(code.n(), false);
    validate_tree_walk(tree, code, q, 0, 0, seen);
}

TreeRun run_tree(const DecisionTree& tree, const Vec& word) {
    TreeRun r;
    int node = 0;
    for (;;) {
        const auto& nd = tree.nodes.at(node);
        if (nd.leaf) {
            r.leaf = node;
            return r;
        }
        Scalar v = word.at(nd.query);
        r.queries.push_back(nd.query);
        r.view.push_back(v);
        node = nd.children.at(v);
    }
}

// ---- exact weighted sampling ----

static std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t g = std::gcd(a, b);
    std::uint64_t q = a / g;
    if (q > UINT64_MAX / b) throw std::overflow_error("weight denominator overflow");
    return q * b;
}

std::size_t sample_weighted(const std::vector<Rat>& weights, Rng& rng) {
    std::uint64_t den = 1;
    for (const auto& w : weights) den = lcm_u64(den, static_cast<std::uint64_t>(w.denominator()));
    std::uint64_t r = rng.below64(den);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += static_cast<std::uint64_t>(weights[i].numerator()) *
               (den / static_cast<std::uint64_t>(weights[i].denominator()));
        if (r < acc) return i;
    }
    throw std::logic_error("sample_weighted: weights sum below 1");
}

// ---- NonadaptiveDecoder ----

NonadaptiveDecoder::NonadaptiveDecoder(LinearCode code, std::map<Target, QueryDistribution> dists,
                                       Rule rule)
    : code_(std::move(code)), dists_(std::move(dists)), rule_(rule) {
    if (dists_.empty()) throw std::invalid_argument("NonadaptiveDecoder: no targets");
    const Field& f = code_.field();
    for (const auto& [t, qd] : dists_) {
        q_ = std::max(q_, qd.max_query_size());
        Vec vstar = target_vector(code_, t);
        std::vector<Entry>& es = entries_[t];
        for (const auto& [set, w] : qd.entries) {
            for (int j : set)
                if (j < 0 || j >= code_.n())
                    throw std::invalid_argument("NonadaptiveDecoder: query index out of range");
            auto coeff = in_span(f, vstar, set, code_);
            if (!coeff)
                throw std::invalid_argument(
                    "completeness violation: target " + t.str() +
                    " is not determined by one of its query sets");
            Entry e;
            e.set = set;
            e.weight = w;
            e.decode_coeff = *coeff;
            if (rule_ == Rule::Canonical && !set.empty())
                e.test_basis = dual(restrict_code(code_, set)).basis;
            es.push_back(std::move(e));
        }
    }
}

std::vector<Target> NonadaptiveDecoder::targets() const {
    std::vector<Target> ts;
    for (const auto& [t, qd] : dists_) ts.push_back(t);
    return ts;
}

const QueryDistribution& NonadaptiveDecoder::dist(Target t) const {
    auto it = dists_.find(t);
    if (it == dists_.end()) throw std::out_of_range("NonadaptiveDecoder: unknown target " + t.str());
    return it->second;
}

Outcome NonadaptiveDecoder::decode_entry(const Entry& e, const Vec& y) const {
    const Field& f = code_.field();
    Vec z(e.set.size());
    for (std::size_t i = 0; i < e.set.size(); ++i) z[i] = y.at(e.set[i]);
    if (rule_ == Rule::Canonical) {
        for (const auto& check : e.test_basis) {
            Scalar s = 0;
            for (std::size_t i = 0; i < z.size(); ++i) s = f.add(s, f.mul(check[i], z[i]));
            if (s != 0) return Outcome::bottom();
        }
    }
    Scalar v = 0;
    for (std::size_t i = 0; i < z.size(); ++i) v = f.add(v, f.mul(e.decode_coeff[i], z[i]));
    return Outcome::of(v);
}

OutcomeDist NonadaptiveDecoder::outcome_dist(const Vec& y, Target t) const {
    auto it = entries_.find(t);
    if (it == entries_.end()) throw std::out_of_range("NonadaptiveDecoder: unknown target");
    OutcomeDist d;
    for (const auto& e : it->second) d.add(decode_entry(e, y), e.weight);
    return d;
}

Outcome NonadaptiveDecoder::run(const Vec& y, Target t, Rng& rng, int* queries) const {
    auto it = entries_.find(t);
    if (it == entries_.end()) throw std::out_of_range("NonadaptiveDecoder: unknown target");
    std::vector<Rat> ws;
    ws.reserve(it->second.size());
    for (const auto& e : it->second) ws.push_back(e.weight);
    const Entry& e = it->second[sample_weighted(ws, rng)];
    if (queries) *queries += static_cast<int>(e.set.size());
    return decode_entry(e, y);
}

std::string NonadaptiveDecoder::to_text() const {
    std::ostringstream out;
    out << "decoder v1\n";
    out << "rule " << (rule_ == Rule::Canonical ? "canonical" : "linear") << "\n";
    for (const auto& [t, qd] : dists_) {
        out << "target " << (t.kind == Target::Kind::Message ? "m " : "c ") << (t.index + 1)
            << "\n";
        for (const auto& [set, w] : qd.entries) {
            out << w.numerator() << "/" << w.denominator() << " :";
            for (int j : set) out << " " << (j + 1);
            out << "\n";
        }
    }
    return out.str();
}

NonadaptiveDecoder NonadaptiveDecoder::from_text(const LinearCode& code, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "decoder v1")
        throw std::invalid_argument("decoder text: missing 'decoder v1' header");
    if (!std::getline(in, line) || line.rfind("rule ", 0) != 0)
        throw std::invalid_argument("decoder text: missing 'rule' line");
    std::string rulename = line.substr(5);
    Rule rule;
    if (rulename == "canonical")
        rule = Rule::Canonical;
    else if (rulename == "linear")
        rule = Rule::Linear;
    else
        throw std::invalid_argument("decoder text: unknown rule " + rulename);

    std::map<Target, std::vector<std::pair<std::vector<int>, Rat>>> raw;
    std::optional<Target> current;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "target") {
            std::string kind;
            int idx;
            ls >> kind >> idx;
            if (!ls || (kind != "m" && kind != "c"))
                throw std::invalid_argument("decoder text: bad target line: " + line);
            current = kind == "m" ? Target::message(idx - 1) : Target::codeword(idx - 1);
            raw[*current];
        } else {
            if (!current) throw std::invalid_argument("decoder text: entry before any target");
            auto slash = tok.find('/');
            if (slash == std::string::npos)
                throw std::invalid_argument("decoder text: expected num/den: " + line);
            long long num = std::stoll(tok.substr(0, slash));
            long long den = std::stoll(tok.substr(slash + 1));
            std::string colon;
            ls >> colon;
            if (colon != ":") throw std::invalid_argument("decoder text: expected ':': " + line);
            std::vector<int> set;
            int j;
            while (ls >> j) set.push_back(j - 1);
            raw[*current].emplace_back(std::move(set), Rat(num, den));
        }
    }
    std::map<Target, QueryDistribution> dists;
    for (auto& [t, entries] : raw) dists.emplace(t, QueryDistribution::make(std::move(entries)));
    return NonadaptiveDecoder(code, std::move(dists), rule);
}

// ---- RepeatDecoder ----

RepeatDecoder::RepeatDecoder(std::shared_ptr<const Decoder> inner, int t)
    : inner_(std::move(inner)), t_(t) {
    if (t_ < 1) throw std::invalid_argument("RepeatDecoder: t >= 1");
}

OutcomeDist RepeatDecoder::outcome_dist(const Vec& y, Target t) const {
    OutcomeDist base = inner_->outcome_dist(y, t);
    OutcomeDist out;
    Rat agree(0);
    for (const auto& [o, p] : base.mass) {
        if (o.is_bottom()) continue;
        Rat pt = pow_rat(p, static_cast<unsigned>(t_));
        if (pt != Rat(0)) out.add(o, pt);
        agree += pt;
    }
    if (agree != Rat(1)) out.add(Outcome::bottom(), Rat(1) - agree);
    return out;
}

Outcome RepeatDecoder::run(const Vec& y, Target t, Rng& rng, int* queries) const {
    Outcome first = inner_->run(y, t, rng, queries);
    for (int i = 1; i < t_; ++i) {
        Outcome o = inner_->run(y, t, rng, queries);
        if (o != first) first = Outcome::bottom();
    }
    return first.is_bottom() ? Outcome::bottom() : first;
}

// ---- adversaries ----

static std::uint64_t binom(std::uint64_t n, std::uint64_t w) {
    if (w > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < w; ++i) r = r * (n - i) / (i + 1);
    return r;
}

static std::uint64_t upow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

/// Lexicographic unranking of w-subsets of [0, n).
static std::vector<int> unrank_subset(int n, int w, std::uint64_t index) {
    std::vector<int> out;
    int start = 0;
    while (w > 0) {
        for (int j = start; j < n; ++j) {
            std::uint64_t block = binom(n - j - 1, w - 1);
            if (index < block) {
                out.push_back(j);
                start = j + 1;
                --w;
                break;
            }
            index -= block;
        }
    }
    return out;
}

std::uint64_t ExhaustiveRadiusAdversary::pattern_count(const LinearCode& code, Target,
                                                       int radius) const {
    std::uint64_t total = 0;
    const std::uint64_t wrongs = code.field().size() - 1;
    for (int w = 0; w <= radius; ++w) total += binom(code.n(), w) * upow(wrongs, w);
    return total;
}

Vec ExhaustiveRadiusAdversary::pattern_at(const LinearCode& code, const Vec& b, Target,
                                          int radius, std::uint64_t index) const {
    const Field& f = code.field();
    const std::uint64_t wrongs = f.size() - 1;
    Vec y = encode(code, b);
    for (int w = 0; w <= radius; ++w) {
        std::uint64_t block = binom(code.n(), w) * upow(wrongs, w);
        if (index >= block) {
            index -= block;
            continue;
        }
        std::uint64_t vals = upow(wrongs, w);
        std::vector<int> supp = unrank_subset(code.n(), w, index / vals);
        std::uint64_t vi = index % vals;
        for (int i = w - 1; i >= 0; --i) {
            std::uint64_t d = vi % wrongs;
            vi /= wrongs;
            // d-th element of F minus the current value
            Scalar cur = y[supp[i]];
            Scalar v = d < cur ? static_cast<Scalar>(d) : static_cast<Scalar>(d + 1);
            y[supp[i]] = v;
        }
        return y;
    }
    throw std::out_of_range("ExhaustiveRadiusAdversary: pattern index out of range");
}

Vec ExhaustiveRadiusAdversary::sample(const LinearCode& code, const Vec& b, Target,
                                      int radius, Rng& rng) const {
    const Field& f = code.field();
    Vec y = encode(code, b);
    std::vector<int> idx(code.n());
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < radius && i < code.n(); ++i) {
        int j = i + static_cast<int>(rng.below(code.n() - i));
        std::swap(idx[i], idx[j]);
        Scalar cur = y[idx[i]];
        Scalar d = rng.below(f.size() - 1);
        y[idx[i]] = d < cur ? d : d + 1;
    }
    return y;
}

FixedSetAdversary::FixedSetAdversary(std::vector<int> positions, Vec values)
    : positions_(std::move(positions)), values_(std::move(values)) {
    if (positions_.size() != values_.size())
        throw std::invalid_argument("FixedSetAdversary: positions/values mismatch");
}

std::uint64_t FixedSetAdversary::pattern_count(const LinearCode&, Target, int) const { return 1; }

Vec FixedSetAdversary::pattern_at(const LinearCode& code, const Vec& b, Target, int radius,
                                  std::uint64_t) const {
    Vec y = encode(code, b);
    int changed = 0;
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (y.at(positions_[i]) != values_[i]) ++changed;
        if (changed > radius) break;
        y[positions_[i]] = values_[i];
    }
    return y;
}

Vec FixedSetAdversary::sample(const LinearCode& code, const Vec& b, Target t, int radius,
                              Rng&) const {
    return pattern_at(code, b, t, radius, 0);
}

// ---- eval ----

int radius_of(Rat delta, int n) {
    Rat r = delta * n;
    return static_cast<int>(r.numerator() / r.denominator());
}

EvalReport eval(const Decoder& dec, const Adversary& adv, const EvalOptions& opt) {
    const LinearCode& code = dec.code();
    const int radius = radius_of(opt.delta, code.n());
    const std::vector<Target> targets = dec.targets();

    EvalReport rep;
    rep.q_max = dec.max_queries();
    rep.seed = opt.seed;

    // completeness is exact whenever the message space fits the budget
    const std::uint64_t nmsg = space_size_checked(code.field(), code.k(), opt.budget);
    bool first = true;
    for (std::uint64_t bi = 0; bi < nmsg; ++bi) {
        Vec b = message_at(code, bi);
        Vec x = encode(code, b);
        for (Target t : targets) {
            Rat p = dec.outcome_dist(x, t).truth_mass(target_truth(code, b, t));
            if (first || p < rep.completeness) rep.completeness = p;
            first = false;
        }
    }

    if (opt.mode == EvalOptions::Mode::Exact) {
        rep.exact = true;
        Rat best(0);
        std::optional<EvalWitness> wit;
        for (Target t : targets) {
            const std::uint64_t patterns = adv.pattern_count(code, t, radius);
            if (patterns == 0) throw std::invalid_argument("eval: adversary is not enumerable");
            if (nmsg > opt.budget / patterns)
                throw std::runtime_error("eval: exact budget exceeded (messages x patterns)");
            for (std::uint64_t bi = 0; bi < nmsg; ++bi) {
                Vec b = message_at(code, bi);
                Scalar truth = target_truth(code, b, t);
                for (std::uint64_t pi = 0; pi < patterns; ++pi) {
                    Vec y = adv.pattern_at(code, b, t, radius, pi);
                    Rat w = dec.outcome_dist(y, t).wrong_mass(truth);
                    if (!wit || w > best) {
                        best = w;
                        wit = EvalWitness{t, b, y};
                    }
                }
            }
        }
        rep.soundness_error = best;
        rep.witness = wit;
        return rep;
    }

    // Monte Carlo over (b, y); decoder coins stay exact per sample
    rep.exact = false;
    rep.trials = opt.trials;
    struct TrialResult {
        Rat max_err{0};
        double err = 0.0;
        EvalWitness wit;
    };
    std::function<TrialResult(std::uint64_t)> trial = [&](std::uint64_t i) {
        Rng rng(derive_seed(opt.seed, i));
        Vec b(code.k());
        for (auto& s : b) s = rng.below(code.field().size());
        TrialResult tr;
        bool have = false;
        for (Target t : targets) {
            Vec y = adv.sample(code, b, t, radius, rng);
            Rat w = dec.outcome_dist(y, t).wrong_mass(target_truth(code, b, t));
            tr.err += to_double(w);
            if (!have || w > tr.max_err) {
                tr.max_err = w;
                tr.wit = EvalWitness{t, b, y};
                have = true;
            }
        }
        tr.err /= static_cast<double>(targets.size());
        return tr;
    };
    auto results = parallel_map<TrialResult>(opt.trials, trial);
    Rat best(0);
    double sum = 0, sumsq = 0;
    std::optional<EvalWitness> wit;
    for (const auto& tr : results) {
        sum += tr.err;
        sumsq += tr.err * tr.err;
        if (!wit || tr.max_err > best) {
            best = tr.max_err;
            wit = tr.wit;
        }
    }
    rep.soundness_error = best;
    rep.witness = wit;
    if (opt.trials > 0) {
        rep.mean_error = sum / static_cast<double>(opt.trials);
        double var = sumsq / static_cast<double>(opt.trials) - rep.mean_error * rep.mean_error;
        if (var < 0) var = 0;
        rep.mean_halfwidth = 3.0 * std::sqrt(var / static_cast<double>(opt.trials));
    }
    return rep;
}

}  // namespace locus
