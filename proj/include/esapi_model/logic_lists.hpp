#pragma once

#include "esapi_model/memory_model.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace esapi_model {

/// Logic image of a concrete list: the refs of its nodes in order. Never
/// contains nil.
using LogicList = std::vector<NodeRef>;

/// Translate the chain starting at `bgn` into its logic list, stopping just
/// before `end`. The end ref itself is never included.
///
/// Returns nullopt (a cycle error) when the chain does not reach `end` within
/// capacity+1 steps: either it loops, or it runs into nil first.
template <Memory M>
std::optional<LogicList> to_ll(const M& m, NodeRef bgn, NodeRef end)
{
    LogicList out;
    for (NodeRef cur = bgn; cur != end; cur = m.next_of(cur)) {
        if (cur.is_nil() || cur.index() >= m.capacity() || out.size() == m.capacity())
            return std::nullopt;
        out.push_back(cur);
    }
    return out;
}

/// Inductive linking predicate between the chain [bgn, end) and `ll`.
///
///   linked(m, e, e, [])
///   b != e, b allocated, b not in tail, linked(m, next(b), e, tail)
///       => linked(m, b, e, b :: tail)
///
/// Unrolled into a loop; each iteration is one application of the cons case.
template <Memory M>
bool linked_ll(const M& m, NodeRef bgn, NodeRef end, std::span<const NodeRef> ll)
{
    NodeRef cur = bgn;
    for (std::size_t i = 0; i < ll.size(); ++i) {
        if (cur == end || ll[i] != cur || !allocated(m, cur))
            return false;
        for (std::size_t j = i + 1; j < ll.size(); ++j)
            if (ll[j] == cur)
                return false;
        cur = m.next_of(cur);
    }
    return cur == end;
}

template <Memory M>
bool linked_ll(const M& m, NodeRef bgn, NodeRef end, std::initializer_list<NodeRef> ll)
{
    return linked_ll(m, bgn, end, std::span<const NodeRef>(ll.begin(), ll.size()));
}

/// Every element of `ll` is allocated at both points and kept its next field.
template <Memory M1, Memory M2>
bool unchanged_ll(const M1& before, const M2& after, std::span<const NodeRef> ll)
{
    for (NodeRef r : ll) {
        if (!allocated(before, r) || !allocated(after, r))
            return false;
        if (before.next_of(r) != after.next_of(r))
            return false;
    }
    return true;
}

template <Memory M1, Memory M2>
bool unchanged_ll(const M1& before, const M2& after, std::initializer_list<NodeRef> ll)
{
    return unchanged_ll(before, after, std::span<const NodeRef>(ll.begin(), ll.size()));
}

/// A whole memory object: a bank cell, a context, or an out-parameter slot.
/// Objects never partially overlap, so separation is plain inequality.
struct Location
{
    enum class Kind { bank_cell, context, slot };

    Kind kind;
    std::size_t id;

    static constexpr Location bank_cell(std::size_t index) { return {Kind::bank_cell, index}; }
    static constexpr Location bank_cell(NodeRef r) { return {Kind::bank_cell, r.index()}; }
    static constexpr Location context(std::size_t id) { return {Kind::context, id}; }
    static constexpr Location slot(std::size_t id) { return {Kind::slot, id}; }

    friend constexpr bool operator==(const Location&, const Location&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Location& l)
    {
        switch (l.kind) {
        case Kind::bank_cell: return os << "cell(" << l.id << ")";
        case Kind::context: return os << "ctx(" << l.id << ")";
        case Kind::slot: return os << "slot(" << l.id << ")";
        }
        return os;
    }
};

constexpr bool separated(const Location& a, const Location& b)
{
    return !(a == b);
}

inline bool sep_from_list(const Location& loc, std::span<const NodeRef> ll)
{
    for (NodeRef r : ll)
        if (!separated(loc, Location::bank_cell(r)))
            return false;
    return true;
}

inline bool sep_from_list(const Location& loc, std::initializer_list<NodeRef> ll)
{
    return sep_from_list(loc, std::span<const NodeRef>(ll.begin(), ll.size()));
}

inline std::ostream& operator<<(std::ostream& os, std::span<const NodeRef> ll)
{
    os << '[';
    for (std::size_t i = 0; i < ll.size(); ++i)
        os << (i ? "," : "") << ll[i];
    return os << ']';
}

} // namespace esapi_model
