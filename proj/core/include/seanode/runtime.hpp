#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seanode/errors.hpp"
#include "seanode/value.hpp"

namespace seanode {

/// Per-invocation map from node ids to values; unwritten slots read as UndefVal.
class MethodState {
public:
    Value operator[](NodeId nid) const;
    /// Returns a copy with nid mapped to v.
    MethodState updated(NodeId nid, Value v) const;
    void set(NodeId nid, Value v);

    /// Explicitly written (non-Undef) slots, ascending id.
    const std::map<NodeId, Value>& slots() const { return slots_; }

    bool operator==(const MethodState&) const = default;

private:
    std::map<NodeId, Value> slots_;
};

inline MethodState new_map_state() { return {}; }

using Params = std::vector<Value>;

/// Pseudo-reference for static fields; never returned by allocation.
inline constexpr std::uint64_t kStaticRef = std::numeric_limits<std::uint64_t>::max();

/// Heap of object fields plus the next free reference.
///
/// Field cells default to IntVal 0. The heap is a value: store and allocation
/// return updated copies.
class DynamicHeap {
public:
    using Cell = std::pair<std::uint64_t, std::string>;

    Value read(std::uint64_t ref, const std::string& field) const;
    std::uint64_t free() const { return free_; }
    const std::map<Cell, Value>& cells() const { return cells_; }
    const std::map<std::uint64_t, std::string>& classes() const { return classes_; }

    bool operator==(const DynamicHeap&) const = default;

private:
    friend DynamicHeap store_field(const std::string&, std::optional<ObjRef>, Value, const DynamicHeap&);
    friend std::pair<ObjRef, DynamicHeap> new_instance(const DynamicHeap&, const std::string&);

    std::map<Cell, Value> cells_;
    std::map<std::uint64_t, std::string> classes_;
    std::uint64_t free_ = 0;
};

/// An absent object addresses the static region.
Value load_field(const std::string& field, std::optional<ObjRef> object, const DynamicHeap& h);
DynamicHeap store_field(const std::string& field, std::optional<ObjRef> object, Value v, const DynamicHeap& h);
/// Allocates the next free reference.
std::pair<ObjRef, DynamicHeap> new_instance(const DynamicHeap& h, const std::string& class_name);

} // namespace seanode
