#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

namespace seanode {

/// 32-bit two's-complement integer. All arithmetic wraps modulo 2^32.
struct IntVal {
    std::int32_t bits = 0;
    auto operator<=>(const IntVal&) const = default;
};

/// Reference to a heap object.
struct ObjRef {
    std::uint64_t ref = 0;
    auto operator<=>(const ObjRef&) const = default;
};

/// Value of a method-state slot that has not been written.
struct UndefVal {
    auto operator<=>(const UndefVal&) const = default;
};

using Value = std::variant<UndefVal, IntVal, ObjRef>;

inline bool is_int(const Value& v) { return std::holds_alternative<IntVal>(v); }
inline bool is_ref(const Value& v) { return std::holds_alternative<ObjRef>(v); }
inline bool is_undef(const Value& v) { return std::holds_alternative<UndefVal>(v); }

/// Nonzero integers are true. Throws TypeMismatch for UndefVal and ObjRef.
bool val_to_bool(const Value& v);

/// "IntVal 5", "ObjRef 0", "UndefVal".
std::string to_string(const Value& v);

namespace arith {

inline IntVal add(IntVal a, IntVal b) {
    return {static_cast<std::int32_t>(static_cast<std::uint32_t>(a.bits) + static_cast<std::uint32_t>(b.bits))};
}

inline IntVal mul(IntVal a, IntVal b) {
    return {static_cast<std::int32_t>(static_cast<std::uint32_t>(a.bits) * static_cast<std::uint32_t>(b.bits))};
}

inline IntVal negate(IntVal a) {
    return {static_cast<std::int32_t>(0u - static_cast<std::uint32_t>(a.bits))};
}

inline IntVal less_than(IntVal a, IntVal b) { return {a.bits < b.bits ? 1 : 0}; }

} // namespace arith

} // namespace seanode
