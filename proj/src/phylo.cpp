// SPDX-License-Identifier: MIT
#include "brank/phylo.hpp"

#include "brank/random.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>

namespace brank {

namespace {

class NewickParser {
public:
    explicit NewickParser(std::string_view text) : s_(text) {}

    Tree parse() {
        Tree tree;
        tree_ = &tree;
        skip_ws();
        subtree(std::nullopt);
        skip_ws();
        expect(';');
        skip_ws();
        if (pos_ != s_.size()) throw NewickError("trailing characters after ';'", pos_);
        std::function<void(std::size_t)> collect = [&](std::size_t v) {
            if (tree.is_leaf(v)) tree.leaves.push_back(v);
            for (std::size_t c : tree.nodes[v].children) collect(c);
        };
        collect(0);
        if (tree.leaves.size() < 2) throw NewickError("tree needs at least two leaves", pos_);
        return tree;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void expect(char c) {
        if (pos_ >= s_.size()) throw NewickError(std::string("expected '") + c + "' but the input ended", pos_);
        if (s_[pos_] != c) throw NewickError(std::string("expected '") + c + "', found '" + s_[pos_] + "'", pos_);
        ++pos_;
    }

    std::string label() {
        skip_ws();
        std::string out;
        if (pos_ < s_.size() && s_[pos_] == '\'') {
            const std::size_t start = pos_++;
            while (true) {
                if (pos_ >= s_.size()) throw NewickError("unterminated quoted label", start);
                if (s_[pos_] == '\'') {
                    if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '\'') {
                        out += '\'';
                        pos_ += 2;
                        continue;
                    }
                    ++pos_;
                    return out;
                }
                out += s_[pos_++];
            }
        }
        while (pos_ < s_.size() && std::string_view("(),:;").find(s_[pos_]) == std::string_view::npos &&
               !std::isspace(static_cast<unsigned char>(s_[pos_])))
            out += s_[pos_++];
        return out;
    }

    void branch_length() {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != ':') return;
        ++pos_;
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                    std::string_view("+-.eE").find(s_[pos_]) != std::string_view::npos))
            ++pos_;
        if (pos_ == start) throw NewickError("expected a branch length", pos_);
    }

    std::size_t subtree(std::optional<std::size_t> parent) {
        const std::size_t id = tree_->nodes.size();
        tree_->nodes.push_back({"", parent, {}});
        if (parent) tree_->nodes[*parent].children.push_back(id);
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            while (true) {
                subtree(id);
                skip_ws();
                if (pos_ < s_.size() && s_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                expect(')');
                break;
            }
            tree_->nodes[id].label = label();
        } else {
            const std::size_t start = pos_;
            tree_->nodes[id].label = label();
            if (tree_->nodes[id].label.empty()) {
                if (pos_ >= s_.size()) throw NewickError("unexpected end of input", pos_);
                throw NewickError("leaf without a label", start);
            }
        }
        branch_length();
        return id;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    Tree* tree_ = nullptr;
};

/// Z[s, x, y] = X[s, x] * Y[s, y].
QTensor outer_by_state(const QTensor& x, const QTensor& y) {
    const std::size_t k = x.dims()[0];
    const std::size_t nx = x.size() / k, ny = y.size() / k;
    Shape dims = x.dims();
    dims.insert(dims.end(), y.dims().begin() + 1, y.dims().end());
    QTensor z(dims);
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t i = 0; i < nx; ++i) {
            const Rational& a = x[s * nx + i];
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < ny; ++j) z[(s * nx + i) * ny + j] = a * y[s * ny + j];
        }
    return z;
}

std::vector<Rational> random_distribution(Rng& rng, std::size_t len, bool stochastic) {
    std::vector<Rational> v(len);
    if (!stochastic) {
        for (auto& x : v) x = Rational(uniform_int(rng, -10, 10));
        return v;
    }
    Rational sum = 0;
    for (auto& x : v) {
        x = Rational(uniform_int(rng, 1, 10));
        sum += x;
    }
    for (auto& x : v) {
        x /= sum;
        x.canonicalize();
    }
    return v;
}

}  // namespace

std::vector<std::size_t> Tree::leaves_below(std::size_t v) const {
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack{v};
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        if (is_leaf(u)) out.push_back(static_cast<std::size_t>(std::find(leaves.begin(), leaves.end(), u) - leaves.begin()));
        for (std::size_t c : nodes[u].children) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::string quote_label(const std::string& label) {
    if (label.find_first_of(" \t\n\r()[]':;,") == std::string::npos) return label;
    std::string s = "'";
    for (char c : label) s += (c == '\'') ? std::string("''") : std::string(1, c);
    return s + "'";
}

}  // namespace

std::string Tree::to_newick() const {
    std::function<std::string(std::size_t)> rec = [&](std::size_t v) {
        if (is_leaf(v)) return quote_label(nodes[v].label);
        std::string s = "(";
        for (std::size_t i = 0; i < nodes[v].children.size(); ++i) {
            if (i) s += ',';
            s += rec(nodes[v].children[i]);
        }
        return s + ")" + quote_label(nodes[v].label);
    };
    return rec(0) + ";";
}

Tree parse_newick(std::string_view text) { return NewickParser(text).parse(); }

ModelParams random_params(const Tree& tree, std::size_t k, std::uint64_t seed, bool stochastic,
                          const std::vector<std::size_t>& leaf_states) {
    if (k == 0) throw std::invalid_argument("random_params: k must be positive");
    if (!leaf_states.empty() && leaf_states.size() != tree.leaf_count())
        throw std::invalid_argument("random_params: one state count per leaf");
    ModelParams params;
    Rng root_rng = make_rng(seed, StreamKind::phylo_params, {0});
    params.root = random_distribution(root_rng, k, stochastic);
    params.edges.resize(tree.nodes.size());
    for (std::size_t v = 1; v < tree.nodes.size(); ++v) {
        std::size_t m = k;
        if (tree.is_leaf(v) && !leaf_states.empty()) {
            const auto li = static_cast<std::size_t>(std::find(tree.leaves.begin(), tree.leaves.end(), v) - tree.leaves.begin());
            m = leaf_states[li];
        }
        QMatrix a(k, m);
        for (std::size_t s = 0; s < k; ++s) {
            Rng rng = make_rng(seed, StreamKind::phylo_params, {v, s + 1});
            const auto row = random_distribution(rng, m, stochastic);
            for (std::size_t j = 0; j < m; ++j) a(s, j) = row[j];
        }
        params.edges[v] = std::move(a);
    }
    return params;
}

QTensor model_tensor(const Tree& tree, const ModelParams& params) {
    const std::size_t k = params.root.size();
    if (k == 0) throw DataError("model: empty root distribution");
    if (params.edges.size() != tree.nodes.size()) throw DataError("model: one edge matrix per node expected");
    std::function<QTensor(std::size_t)> below = [&](std::size_t v) {
        std::optional<QTensor> g;
        for (std::size_t c : tree.nodes[v].children) {
            if (!params.edges[c]) throw DataError("model: missing edge matrix for node " + std::to_string(c));
            const QMatrix& m = *params.edges[c];
            if (m.rows() != k) throw DataError("model: edge matrix rows must match k");
            QTensor h;
            if (tree.is_leaf(c)) h = matrix_to_tensor(m);
            else {
                if (m.cols() != k) throw DataError("model: internal edge matrices must be k x k");
                const QTensor sub = below(c);
                std::vector<std::optional<QMatrix>> maps(sub.order());
                maps[0] = m;
                h = mode_apply(sub, maps);
            }
            g = g ? outer_by_state(*g, h) : h;
        }
        return *g;
    };
    const QTensor g = below(0);
    return contract(g, 0, params.root);
}

Reduced remove_leaf(const Tree& tree, const ModelParams& params, std::size_t leaf) {
    if (leaf >= tree.leaf_count()) throw std::invalid_argument("remove_leaf: no such leaf");
    std::vector<bool> drop(tree.nodes.size(), false);
    std::size_t v = tree.leaves[leaf];
    drop[v] = true;
    while (tree.nodes[v].parent && *tree.nodes[v].parent != 0) {
        const std::size_t u = *tree.nodes[v].parent;
        const auto& ch = tree.nodes[u].children;
        if (!std::all_of(ch.begin(), ch.end(), [&](std::size_t c) { return drop[c]; })) break;
        drop[u] = true;
        v = u;
    }
    std::vector<std::size_t> new_id(tree.nodes.size(), 0);
    Reduced out;
    out.params.root = params.root;
    for (std::size_t u = 0; u < tree.nodes.size(); ++u) {
        if (drop[u]) continue;
        new_id[u] = out.tree.nodes.size();
        Tree::Node n{tree.nodes[u].label, std::nullopt, {}};
        if (tree.nodes[u].parent) n.parent = new_id[*tree.nodes[u].parent];
        out.tree.nodes.push_back(std::move(n));
        out.params.edges.push_back(params.edges[u]);
    }
    for (std::size_t u = 0; u < tree.nodes.size(); ++u) {
        if (drop[u]) continue;
        for (std::size_t c : tree.nodes[u].children)
            if (!drop[c]) out.tree.nodes[new_id[u]].children.push_back(new_id[c]);
    }
    std::function<void(std::size_t)> collect = [&](std::size_t u) {
        if (out.tree.is_leaf(u)) out.tree.leaves.push_back(u);
        for (std::size_t c : out.tree.nodes[u].children) collect(c);
    };
    collect(0);
    return out;
}

QTensor group_modes(const QTensor& t, const std::vector<std::vector<std::size_t>>& groups) {
    std::vector<std::size_t> order;
    for (const auto& g : groups) order.insert(order.end(), g.begin(), g.end());
    if (order.size() != t.order()) throw std::invalid_argument("group_modes: groups must cover every mode once");
    std::vector<std::size_t> perm(t.order());
    for (std::size_t i = 0; i < order.size(); ++i) perm.at(order[i]) = i;
    const QTensor moved = permute_modes(t, std::span<const std::size_t>(perm));
    Shape dims;
    for (const auto& g : groups) {
        std::size_t d = 1;
        for (std::size_t m : g) d *= t.dims()[m];
        dims.push_back(d);
    }
    return QTensor(dims, std::vector<Rational>(moved.entries().begin(), moved.entries().end()));
}

PhyloReport check_membership(const QTensor& t, const Tree& tree, std::size_t k) {
    if (t.order() != tree.leaf_count())
        throw DataError("tensor has " + std::to_string(t.order()) + " modes but the tree has " +
                        std::to_string(tree.leaf_count()) + " leaves");
    PhyloReport report;
    report.k = k;
    const std::size_t p = t.order();

    std::set<std::vector<std::size_t>> seen;
    for (std::size_t v = 1; v < tree.nodes.size(); ++v) {
        if (tree.is_leaf(v)) continue;
        const auto below = tree.leaves_below(v);
        if (below.size() == p) continue;
        std::vector<std::size_t> rows = below;
        if (below.front() != 0) {
            rows.clear();
            for (std::size_t m = 0; m < p; ++m)
                if (!std::binary_search(below.begin(), below.end(), m)) rows.push_back(m);
        }
        if (!seen.insert(rows).second) continue;
        EdgeCheck e;
        e.node = v;
        e.row_modes = rows;
        e.rank = rank(flatten_matrix(t, rows));
        e.violation = flattening_violation(t, rows, k);
        report.edges.push_back(std::move(e));
    }

    for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
        if (tree.is_leaf(v)) continue;
        StarCheck star;
        star.node = v;
        for (std::size_t c : tree.nodes[v].children) star.groups.push_back(tree.leaves_below(c));
        if (v != 0) {
            const auto below = tree.leaves_below(v);
            std::vector<std::size_t> rest;
            for (std::size_t m = 0; m < p; ++m)
                if (!std::binary_search(below.begin(), below.end(), m)) rest.push_back(m);
            star.groups.push_back(std::move(rest));
        }
        std::sort(star.groups.begin(), star.groups.end());
        star.report = direct_test(group_modes(t, star.groups), k);
        report.stars.push_back(std::move(star));
    }

    const bool edge_bad = std::any_of(report.edges.begin(), report.edges.end(), [](const EdgeCheck& e) { return e.violation.has_value(); });
    const bool star_bad = std::any_of(report.stars.begin(), report.stars.end(),
                                      [](const StarCheck& s) { return s.report.verdict == Verdict::violated; });
    const bool all_certified = std::all_of(report.stars.begin(), report.stars.end(),
                                           [](const StarCheck& s) { return s.report.verdict == Verdict::certified; });
    if (edge_bad || star_bad) report.verdict = Verdict::violated;
    else {
        report.verdict = all_certified ? Verdict::certified : Verdict::inconclusive;
        report.passed = true;
    }
    return report;
}

}  // namespace brank
