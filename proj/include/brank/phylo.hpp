// SPDX-License-Identifier: MIT
#pragma once

#include "brank/certify.hpp"
#include "brank/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace brank {

class NewickError : public DataError {
public:
    NewickError(const std::string& what, std::size_t offset)
        : DataError(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Rooted tree; node 0 is the root. Leaves are numbered left to right and
/// leaf i is tensor mode i.
struct Tree {
    struct Node {
        std::string label;
        std::optional<std::size_t> parent;
        std::vector<std::size_t> children;
    };
    std::vector<Node> nodes;
    std::vector<std::size_t> leaves;  // node ids, left to right

    [[nodiscard]] bool is_leaf(std::size_t v) const { return nodes[v].children.empty(); }
    [[nodiscard]] std::size_t leaf_count() const { return leaves.size(); }
    /// Leaf (mode) indices below v, ascending.
    [[nodiscard]] std::vector<std::size_t> leaves_below(std::size_t v) const;
    /// Newick text with the leaf labels.
    [[nodiscard]] std::string to_newick() const;
};

/// Labels are required on leaves; branch lengths and internal labels are
/// accepted and ignored.
Tree parse_newick(std::string_view text);

/// Root distribution and one matrix per non-root node: rows are the parent's
/// k states, columns the node's states (k for internal nodes, the observed
/// state count for leaves).
struct ModelParams {
    std::vector<Rational> root;
    std::vector<std::optional<QMatrix>> edges;  // indexed by node id
};

/// leaf_states empty means k states at every leaf.
ModelParams random_params(const Tree& tree, std::size_t k, std::uint64_t seed, bool stochastic,
                          const std::vector<std::size_t>& leaf_states = {});

/// Entry = sum over internal states of root(s) times the product of edge
/// matrix entries.
QTensor model_tensor(const Tree& tree, const ModelParams& params);

struct Reduced {
    Tree tree;
    ModelParams params;
};
/// Drops a leaf (and any internal node left without children).
Reduced remove_leaf(const Tree& tree, const ModelParams& params, std::size_t leaf);

struct EdgeCheck {
    std::size_t node = 0;  // child endpoint of the edge
    std::vector<std::size_t> row_modes;
    std::size_t rank = 0;
    std::optional<MinorEvidence> violation;
};

struct StarCheck {
    std::size_t node = 0;
    /// Leaf modes grouped by branch; each group is one mode of the star tensor.
    std::vector<std::vector<std::size_t>> groups;
    CertReport report;
};

struct PhyloReport {
    Verdict verdict = Verdict::inconclusive;
    bool passed = false;
    std::size_t k = 0;
    std::vector<EdgeCheck> edges;
    std::vector<StarCheck> stars;
};

/// Tensor with one mode per group: modes of each group are merged row-major,
/// groups in the given order.
QTensor group_modes(const QTensor& t, const std::vector<std::vector<std::size_t>>& groups);

/// Internal-edge flattening minors plus a border-rank <= k test of the star
/// tensor at every internal vertex.
PhyloReport check_membership(const QTensor& t, const Tree& tree, std::size_t k);

}  // namespace brank
