#include "locus/goldberg.hpp"

#include <algorithm>
#include <stdexcept>

namespace locus::goldberg {

AdaptiveDecoder::AdaptiveDecoder(LinearCode code, std::map<Target, TreeDist> trees, int q)
    : code_(std::move(code)), trees_(std::move(trees)), q_(q) {
    if (trees_.empty()) throw std::invalid_argument("AdaptiveDecoder: no targets");
    for (const auto& [t, dist] : trees_) {
        Rat total(0);
        for (const auto& [tree, w] : dist) {
            validate_tree(tree, code_, q_);
            if (w <= Rat(0)) throw std::invalid_argument("AdaptiveDecoder: nonpositive weight");
            total += w;
            // longest root-to-leaf query count
            struct Walk {
                const DecisionTree& tr;
                bool* global;
                int depth(int node) const {
                    const auto& nd = tr.nodes[node];
                    if (nd.leaf) {
                        if (nd.global_decode) *global = true;
                        return 0;
                    }
                    int d = 0;
                    for (int c : nd.children) d = std::max(d, depth(c));
                    return d + 1;
                }
            };
            bool global = false;
            Walk wk{tree, &global};
            max_queries_ = std::max(max_queries_, wk.depth(0));
            has_global_ |= global;
        }
        if (total != Rat(1))
            throw std::invalid_argument("AdaptiveDecoder: tree weights sum to " + rat_str(total));
    }
    if (has_global_) max_queries_ = code_.n();
}

std::vector<Target> AdaptiveDecoder::targets() const {
    std::vector<Target> ts;
    for (const auto& [t, d] : trees_) ts.push_back(t);
    return ts;
}

static Outcome leaf_outcome(const LinearCode& code, Target t, const DecisionTree::Node& leaf,
                            const Vec& y) {
    if (!leaf.global_decode) return leaf.label;
    auto b = decode_full(code, y);
    if (!b) return Outcome::bottom();
    return Outcome::of(target_truth(code, *b, t));
}

OutcomeDist AdaptiveDecoder::outcome_dist(const Vec& y, Target t) const {
    auto it = trees_.find(t);
    if (it == trees_.end()) throw std::out_of_range("AdaptiveDecoder: unknown target");
    OutcomeDist d;
    for (const auto& [tree, w] : it->second) {
        TreeRun run = run_tree(tree, y);
        d.add(leaf_outcome(code_, t, tree.nodes[run.leaf], y), w);
    }
    return d;
}

Outcome AdaptiveDecoder::run(const Vec& y, Target t, Rng& rng, int* queries) const {
    auto it = trees_.find(t);
    if (it == trees_.end()) throw std::out_of_range("AdaptiveDecoder: unknown target");
    std::vector<Rat> ws;
    for (const auto& [tree, w] : it->second) ws.push_back(w);
    const auto& [tree, w] = it->second[sample_weighted(ws, rng)];
    TreeRun tr = run_tree(tree, y);
    const auto& leaf = tree.nodes[tr.leaf];
    if (queries) *queries += leaf.global_decode ? code_.n() : static_cast<int>(tr.queries.size());
    return leaf_outcome(code_, t, leaf, y);
}

LeafClass classify_leaf(const LinearCode& code, Target t, const std::vector<int>& Q,
                        const Vec& sigma) {
    if (Q.size() != sigma.size()) throw std::invalid_argument("classify_leaf: |sigma| != |Q|");
    Mat rows;
    for (int j : Q) rows.push_back(code.row(j));
    if (!solve_linear(code.field(), rows, sigma)) return LeafClass::Nontoxic;  // canonical bottom
    bool determined = Q.empty()
                          ? std::all_of(target_vector(code, t).begin(),
                                        target_vector(code, t).end(),
                                        [](Scalar s) { return s == 0; })
                          : in_span(code.field(), target_vector(code, t), Q, code).has_value();
    return determined ? LeafClass::Nontoxic : LeafClass::Toxic;
}

// ---- rerandomize ----

static DecisionTree shift_tree(const LinearCode& code, const DecisionTree& tree, const Vec& shift_word,
                               Scalar out_shift) {
    const Field& f = code.field();
    DecisionTree out = tree;
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
        auto& nd = out.nodes[i];
        if (nd.leaf) {
            if (!nd.global_decode && !nd.label.is_bottom())
                nd.label = Outcome::of(f.sub(nd.label.value(), out_shift));
            continue;
        }
        // observed value v corresponds to original branch v + shift at this index
        const auto& orig = tree.nodes[i];
        for (Scalar v = 0; v < f.size(); ++v)
            nd.children[v] = orig.children[f.add(v, shift_word[nd.query])];
    }
    return out;
}

AdaptiveDecoder rerandomize(const AdaptiveDecoder& dec, std::uint64_t budget) {
    const LinearCode& code = dec.code();
    const Field& f = code.field();
    const std::uint64_t nmsg = space_size_checked(f, code.k(), budget);

    std::map<Target, AdaptiveDecoder::TreeDist> out;
    Rat per(1, static_cast<long long>(nmsg));
    for (const auto& [t, dist] : dec.trees()) {
        AdaptiveDecoder::TreeDist nd;
        for (std::uint64_t bi = 0; bi < nmsg; ++bi) {
            Vec bt = message_at(code, bi);
            Vec xt = encode(code, bt);
            Scalar out_shift = target_truth(code, bt, t);
            for (const auto& [tree, w] : dist)
                nd.emplace_back(shift_tree(code, tree, xt, out_shift), w * per);
        }
        out.emplace(t, std::move(nd));
    }
    return AdaptiveDecoder(code, std::move(out), dec.q());
}

// ---- relabeling ----

namespace {

struct LeafInfo {
    int node;
    std::vector<int> queries;
    Vec view;
};

void collect_leaves(const DecisionTree& tree, int node, std::vector<int>& qs, Vec& view,
                    std::vector<LeafInfo>& out, std::uint32_t field_size) {
    const auto& nd = tree.nodes[node];
    if (nd.leaf) {
        out.push_back(LeafInfo{node, qs, view});
        return;
    }
    for (Scalar v = 0; v < field_size; ++v) {
        qs.push_back(nd.query);
        view.push_back(v);
        collect_leaves(tree, nd.children[v], qs, view, out, field_size);
        qs.pop_back();
        view.pop_back();
    }
}

/// Canonical label for a leaf; global-decode for toxic leaves.
DecisionTree::Node canonical_leaf(const LinearCode& code, Target t, const LeafInfo& li) {
    DecisionTree::Node leaf;
    leaf.leaf = true;
    Mat rows;
    for (int j : li.queries) rows.push_back(code.row(j));
    if (!solve_linear(code.field(), rows, li.view)) {
        leaf.label = Outcome::bottom();
        return leaf;
    }
    if (classify_leaf(code, t, li.queries, li.view) == LeafClass::Toxic) {
        leaf.global_decode = true;
        return leaf;
    }
    leaf.label = canonical_decode(code, t, li.queries, li.view);
    return leaf;
}

bool leaf_equal(const DecisionTree::Node& a, const DecisionTree::Node& b) {
    return a.global_decode == b.global_decode && (a.global_decode || a.label == b.label);
}

}  // namespace

std::vector<LeafRef> relabelable_leaves(const AdaptiveDecoder& dec) {
    std::vector<LeafRef> out;
    for (const auto& [t, dist] : dec.trees()) {
        for (std::size_t ti = 0; ti < dist.size(); ++ti) {
            std::vector<LeafInfo> leaves;
            std::vector<int> qs;
            Vec view;
            collect_leaves(dist[ti].first, 0, qs, view, leaves, dec.code().field().size());
            for (const auto& li : leaves) {
                DecisionTree::Node want = canonical_leaf(dec.code(), t, li);
                if (!leaf_equal(want, dist[ti].first.nodes[li.node]))
                    out.push_back(LeafRef{t, static_cast<int>(ti), li.node});
            }
        }
    }
    return out;
}

AdaptiveDecoder relabel_one(const AdaptiveDecoder& dec, const LeafRef& ref) {
    std::map<Target, AdaptiveDecoder::TreeDist> trees = dec.trees();
    auto it = trees.find(ref.target);
    if (it == trees.end()) throw std::out_of_range("relabel_one: unknown target");
    DecisionTree& tree = it->second.at(ref.tree).first;

    std::vector<LeafInfo> leaves;
    std::vector<int> qs;
    Vec view;
    collect_leaves(tree, 0, qs, view, leaves, dec.code().field().size());
    for (const auto& li : leaves) {
        if (li.node != ref.node) continue;
        tree.nodes[li.node] = canonical_leaf(dec.code(), ref.target, li);
        return AdaptiveDecoder(dec.code(), std::move(trees), dec.q());
    }
    throw std::out_of_range("relabel_one: node is not a leaf of that tree");
}

AdaptiveDecoder relabel(const AdaptiveDecoder& dec) {
    std::map<Target, AdaptiveDecoder::TreeDist> trees = dec.trees();
    for (auto& [t, dist] : trees) {
        for (auto& [tree, w] : dist) {
            std::vector<LeafInfo> leaves;
            std::vector<int> qs;
            Vec view;
            collect_leaves(tree, 0, qs, view, leaves, dec.code().field().size());
            for (const auto& li : leaves) tree.nodes[li.node] = canonical_leaf(dec.code(), t, li);
        }
    }
    return AdaptiveDecoder(dec.code(), std::move(trees), dec.q());
}

Rat toxic_rate(const AdaptiveDecoder& relabeled, std::optional<Rat> eps, std::uint64_t budget) {
    const LinearCode& code = relabeled.code();
    const std::uint64_t nmsg = space_size_checked(code.field(), code.k(), budget);
    Rat worst(0);
    for (const auto& [t, dist] : relabeled.trees()) {
        for (std::uint64_t bi = 0; bi < nmsg; ++bi) {
            Vec x = encode(code, message_at(code, bi));
            Rat rate(0);
            for (const auto& [tree, w] : dist) {
                TreeRun run = run_tree(tree, x);
                if (tree.nodes[run.leaf].global_decode) rate += w;
            }
            worst = std::max(worst, rate);
        }
    }
    if (eps) {
        Rat bound = Rat(code.field().size()) * *eps / Rat(code.field().size() - 1);
        if (worst > bound)
            throw std::logic_error("toxic_rate " + rat_str(worst) + " exceeds |F|eps/(|F|-1) = " +
                                   rat_str(bound));
    }
    return worst;
}

NonadaptiveConversion to_nonadaptive(const AdaptiveDecoder& relabeled, std::uint64_t budget) {
    const LinearCode& code = relabeled.code();
    const std::uint64_t nmsg = space_size_checked(code.field(), code.k(), budget);
    Rat per(1, static_cast<long long>(nmsg));

    std::map<Target, QueryDistribution> dists;
    std::map<Target, Rat> toxic_mass;
    for (const auto& [t, dist] : relabeled.trees()) {
        std::map<std::vector<int>, Rat> sets;
        Rat toxic(0);
        for (std::uint64_t bi = 0; bi < nmsg; ++bi) {
            Vec x = encode(code, message_at(code, bi));
            for (const auto& [tree, w] : dist) {
                TreeRun run = run_tree(tree, x);
                if (tree.nodes[run.leaf].global_decode) {
                    toxic += w * per;
                    continue;
                }
                std::vector<int> set = run.queries;
                std::sort(set.begin(), set.end());
                sets[set] += w * per;
            }
        }
        toxic_mass[t] = toxic;
        if (toxic == Rat(1))
            throw std::runtime_error("to_nonadaptive: every leaf of target " + t.str() +
                                     " is toxic; the decoder carries no information");
        std::vector<std::pair<std::vector<int>, Rat>> raw;
        Rat keep = Rat(1) - toxic;
        for (auto& [set, w] : sets) raw.emplace_back(set, w / keep);
        dists.emplace(t, QueryDistribution::make(std::move(raw)));
    }
    return NonadaptiveConversion{
        NonadaptiveDecoder(code, std::move(dists), NonadaptiveDecoder::Rule::Canonical),
        std::move(toxic_mass)};
}

Rat certified_soundness(const Field& f, Rat s, Rat eps) {
    return s + (Rat(2) + Rat(1, f.size() - 1)) * eps;
}

PipelineResult goldberg_pipeline(const AdaptiveDecoder& dec, Rat delta, std::uint64_t budget) {
    ExhaustiveRadiusAdversary adv;
    EvalOptions opt;
    opt.mode = EvalOptions::Mode::Exact;
    opt.delta = delta;
    opt.budget = budget;

    EvalReport before = eval(dec, adv, opt);
    Rat eps = Rat(1) - before.completeness;
    Rat s = before.soundness_error;

    AdaptiveDecoder rr = rerandomize(dec, budget);
    AdaptiveDecoder rl = relabel(rr);
    Rat toxic = toxic_rate(rl, eps, budget);
    NonadaptiveConversion conv = to_nonadaptive(rl, budget);

    EvalReport after = eval(conv.decoder, adv, opt);
    PipelineResult out{before,
                       after,
                       eps,
                       s,
                       toxic,
                       certified_soundness(dec.code().field(), s, eps),
                       std::move(conv.decoder)};
    if (after.completeness != Rat(1))
        throw std::logic_error("goldberg_pipeline: output completeness below 1");
    if (after.soundness_error > out.certificate)
        throw std::logic_error("goldberg_pipeline: output soundness " +
                               rat_str(after.soundness_error) + " exceeds the certificate " +
                               rat_str(out.certificate));
    return out;
}

}  // namespace locus::goldberg
