#pragma once

#include "esapi_model/contract.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <ranges>
#include <span>
#include <stdexcept>
#include <vector>

namespace esapi_model {

inline constexpr std::size_t kDefaultBankCapacity = 64;
inline constexpr std::size_t kNameCapacity = 16;

/// Reference to a bank cell, or the null sentinel.
///
/// Node addresses are bank indices; a non-nil ref is only meaningful
/// against a memory whose capacity exceeds its index.
class NodeRef
{
public:
    constexpr NodeRef() noexcept = default;

    static constexpr NodeRef nil() noexcept { return NodeRef{}; }
    static constexpr NodeRef at(std::size_t index) noexcept
    {
        NodeRef r;
        r.value_ = static_cast<std::uint32_t>(index);
        return r;
    }

    constexpr bool is_nil() const noexcept { return value_ == kNilValue; }
    constexpr std::size_t index() const noexcept { return value_; }

    friend constexpr auto operator<=>(NodeRef, NodeRef) noexcept = default;

    friend std::ostream& operator<<(std::ostream& os, NodeRef r)
    {
        if (r.is_nil())
            return os << "nil";
        return os << r.index();
    }

private:
    static constexpr std::uint32_t kNilValue = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t value_ = kNilValue;
};

inline constexpr NodeRef kNil = NodeRef::nil();

struct Resource
{
    std::array<std::uint8_t, kNameCapacity> name{};
    std::uint32_t name_size = 0;
    std::int32_t aux = 0;

    friend bool operator==(const Resource&, const Resource&) = default;
};

struct Node
{
    std::uint32_t handle = 0;
    Resource rsrc;
    NodeRef next;

    friend bool operator==(const Node&, const Node&) = default;
};

/// Anything the list predicates can read: a live bank, a snapshot taken from
/// one, or a compact heap produced by the lemma enumerator.
template <class M>
concept Memory = requires(const M& m, NodeRef r) {
    { m.capacity() } -> std::convertible_to<std::size_t>;
    { m.alloc_idx() } -> std::convertible_to<std::size_t>;
    { m.next_of(r) } -> std::same_as<NodeRef>;
};

/// 0 <= alloc_idx <= capacity.
template <Memory M>
constexpr bool valid_bank(const M& m) noexcept
{
    return m.capacity() >= 1 && m.alloc_idx() <= m.capacity();
}

/// The model's `\valid`: a non-nil ref below the allocation cursor.
template <Memory M>
constexpr bool allocated(const M& m, NodeRef r) noexcept
{
    return !r.is_nil() && r.index() < m.alloc_idx() && r.index() < m.capacity();
}

/// True iff every non-nil ref in `refs` lies strictly below the allocation
/// cursor, i.e. is separated from the allocable region [alloc_idx, capacity).
template <Memory M, std::ranges::input_range R>
    requires std::convertible_to<std::ranges::range_value_t<R>, NodeRef>
constexpr bool is_fresh_free(const M& m, const R& refs)
{
    for (NodeRef r : refs)
        if (!r.is_nil() && r.index() >= m.alloc_idx())
            return false;
    return true;
}

template <Memory M>
bool is_fresh_free(const M& m, std::initializer_list<NodeRef> refs)
{
    return is_fresh_free(m, std::span<const NodeRef>(refs.begin(), refs.size()));
}

/// Full copy of a bank at one program point. Immutable after construction.
class MemorySnapshot
{
public:
    MemorySnapshot(std::size_t alloc_idx, std::vector<Node> cells)
        : alloc_idx_(alloc_idx), cells_(std::move(cells))
    {
        require(!cells_.empty(), "snapshot needs at least one cell");
        require(alloc_idx_ <= cells_.size(), "snapshot alloc_idx exceeds capacity");
    }

    std::size_t capacity() const noexcept { return cells_.size(); }
    std::size_t alloc_idx() const noexcept { return alloc_idx_; }
    std::span<const Node> cells() const noexcept { return cells_; }

    const Node& cell(NodeRef r) const
    {
        require(!r.is_nil() && r.index() < cells_.size(), "snapshot cell out of range");
        return cells_[r.index()];
    }

    NodeRef next_of(NodeRef r) const { return cell(r).next; }

    friend bool operator==(const MemorySnapshot&, const MemorySnapshot&) = default;

private:
    std::size_t alloc_idx_;
    std::vector<Node> cells_;
};

/// Fixed-capacity node bank with a monotone allocation cursor.
///
/// Cells never move and are never freed. Not thread-safe; a Bank is owned by
/// exactly one store at a time.
class Bank
{
public:
    explicit Bank(std::size_t capacity = kDefaultBankCapacity) : cells_(checked(capacity)) {}

    /// Rebuild a bank from an earlier snapshot (or a hand-made heap).
    static Bank restore(const MemorySnapshot& snap)
    {
        Bank b(snap.capacity());
        b.alloc_idx_ = snap.alloc_idx();
        std::ranges::copy(snap.cells(), b.cells_.begin());
        return b;
    }

    std::size_t capacity() const noexcept { return cells_.size(); }
    std::size_t alloc_idx() const noexcept { return alloc_idx_; }
    std::span<const Node> cells() const noexcept { return cells_; }

    const Node& cell(NodeRef r) const
    {
        require(!r.is_nil() && r.index() < cells_.size(), "bank cell out of range");
        return cells_[r.index()];
    }

    Node& cell(NodeRef r)
    {
        require(!r.is_nil() && r.index() < cells_.size(), "bank cell out of range");
        return cells_[r.index()];
    }

    NodeRef next_of(NodeRef r) const { return cell(r).next; }

    /// Static replacement for calloc: hands out the cell at the cursor, zeroes
    /// every field of it, and bumps the cursor by one. Returns nil and leaves
    /// the bank untouched once all cells are handed out.
    NodeRef calloc_node()
    {
        if (alloc_idx_ == cells_.size())
            return kNil;
        const NodeRef r = NodeRef::at(alloc_idx_);
        cells_[alloc_idx_] = Node{};
        ++alloc_idx_;
        return r;
    }

    MemorySnapshot snapshot() const { return MemorySnapshot(alloc_idx_, cells_); }

private:
    static std::size_t checked(std::size_t capacity)
    {
        if (capacity == 0)
            throw std::invalid_argument("bank capacity must be at least 1");
        return capacity;
    }

    std::size_t alloc_idx_ = 0;
    std::vector<Node> cells_;
};

} // namespace esapi_model
