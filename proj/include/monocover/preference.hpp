#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "monocover/graph.hpp"
#include "monocover/rational.hpp"

namespace monocover {

/// Partial map vertex -> colour.
class PreferenceMap {
public:
    PreferenceMap() = default;
    PreferenceMap(std::size_t n1, std::size_t n2) : p1_(n1), p2_(n2) {}

    std::optional<Colour> get(VertexId v) const { return side(v.part).at(v.index); }
    void set(VertexId v, Colour c) { side(v.part).at(v.index) = c; }
    void clear(VertexId v) { side(v.part).at(v.index).reset(); }

    /// Calls `set` on every member of a one-sided set.
    void set_all(Part p, const Bitset& members, Colour c) {
        members.for_each([&](std::size_t i) { side(p)[i] = c; });
    }

    std::size_t count(Colour c) const {
        std::size_t k = 0;
        for (const auto* s : {&p1_, &p2_})
            for (const auto& x : *s)
                if (x == c) ++k;
        return k;
    }
    bool empty() const { return count(Colour::Red) + count(Colour::Blue) == 0; }

private:
    std::vector<std::optional<Colour>>& side(Part p) { return p == Part::P1 ? p1_ : p2_; }
    const std::vector<std::optional<Colour>>& side(Part p) const { return p == Part::P1 ? p1_ : p2_; }

    std::vector<std::optional<Colour>> p1_, p2_;
};

enum class AuditStatus { Satisfied, Violated, NotApplicable };

inline std::string to_string(AuditStatus s) {
    switch (s) {
        case AuditStatus::Satisfied: return "satisfied";
        case AuditStatus::Violated: return "violated";
        case AuditStatus::NotApplicable: return "n/a";
    }
    return "unknown";
}

/// One measured quantity against the bound the construction claims for it.
struct AuditClaim {
    std::string name;
    double measured = 0;
    double bound = 0;
    std::string relation;  // ">=" or "<="
    AuditStatus status = AuditStatus::NotApplicable;
};

struct AuditReport {
    std::vector<AuditClaim> claims;

    const AuditClaim* find(const std::string& name) const {
        for (const auto& c : claims)
            if (c.name == name) return &c;
        return nullptr;
    }
    std::size_t count(AuditStatus s) const {
        std::size_t k = 0;
        for (const auto& c : claims)
            if (c.status == s) ++k;
        return k;
    }
};

namespace detail {

inline AuditClaim claim_at_least(std::string name, std::size_t measured, const Rational& bound) {
    return {std::move(name), static_cast<double>(measured), bound.to_double(), ">=",
            count_at_least(measured, bound) ? AuditStatus::Satisfied : AuditStatus::Violated};
}
inline AuditClaim claim_at_most(std::string name, std::size_t measured, const Rational& bound) {
    return {std::move(name), static_cast<double>(measured), bound.to_double(), "<=",
            count_at_most(measured, bound) ? AuditStatus::Satisfied : AuditStatus::Violated};
}
inline AuditClaim claim_na(std::string name, std::string relation) {
    return {std::move(name), 0, 0, std::move(relation), AuditStatus::NotApplicable};
}

/// Tree assembled from (vertex, parent) attachments.
class TreeAssembler {
public:
    TreeAssembler(Colour colour, std::size_t n1, std::size_t n2) : tree_{colour, VertexSet(n1, n2), {}} {}

    void root(VertexId v) { tree_.vertices.insert(v); }
    void attach(VertexId v, VertexId parent) {
        tree_.vertices.insert(v);
        tree_.edges.push_back(edge_between(v, parent));
    }
    /// Attaches each member of `members` (side p) to its lowest neighbour of
    /// colour `colour` in `parents` (opposite side).
    void attach_all(const TwoColouring& c, Part p, const Bitset& members, const Bitset& parents) {
        members.for_each([&](std::size_t i) {
            VertexId v{p, i};
            std::size_t par = Bitset::first_common(c.neighbours(v, tree_.colour), parents);
            if (par == Bitset::npos) throw std::logic_error("tree assembly: vertex " + to_string(v) + " has no parent");
            attach(v, {opposite(p), par});
        });
    }
    MonoTree take() && { return std::move(tree_); }

private:
    MonoTree tree_;
};

}  // namespace detail

}  // namespace monocover
