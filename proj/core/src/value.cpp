#include "seanode/value.hpp"

#include "seanode/errors.hpp"

namespace seanode {

bool val_to_bool(const Value& v) {
    if (const auto* i = std::get_if<IntVal>(&v))
        return i->bits != 0;
    throw TypeMismatch("expected an integer, got " + to_string(v));
}

std::string to_string(const Value& v) {
    struct Printer {
        std::string operator()(UndefVal) const { return "UndefVal"; }
        std::string operator()(IntVal i) const { return "IntVal " + std::to_string(i.bits); }
        std::string operator()(ObjRef r) const { return "ObjRef " + std::to_string(r.ref); }
    };
    return std::visit(Printer{}, v);
}

} // namespace seanode
