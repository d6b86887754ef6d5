#include "seanode/runtime.hpp"

namespace seanode {

Value MethodState::operator[](NodeId nid) const {
    auto it = slots_.find(nid);
    return it == slots_.end() ? Value{UndefVal{}} : it->second;
}

MethodState MethodState::updated(NodeId nid, Value v) const {
    MethodState copy = *this;
    copy.set(nid, std::move(v));
    return copy;
}

void MethodState::set(NodeId nid, Value v) {
    // UndefVal is the default; keep the map normalized so equality is structural.
    if (is_undef(v))
        slots_.erase(nid);
    else
        slots_[nid] = std::move(v);
}

Value DynamicHeap::read(std::uint64_t ref, const std::string& field) const {
    auto it = cells_.find({ref, field});
    return it == cells_.end() ? Value{IntVal{0}} : it->second;
}

Value load_field(const std::string& field, std::optional<ObjRef> object, const DynamicHeap& h) {
    return h.read(object ? object->ref : kStaticRef, field);
}

DynamicHeap store_field(const std::string& field, std::optional<ObjRef> object, Value v, const DynamicHeap& h) {
    DynamicHeap out = h;
    out.cells_[{object ? object->ref : kStaticRef, field}] = std::move(v);
    return out;
}

std::pair<ObjRef, DynamicHeap> new_instance(const DynamicHeap& h, const std::string& class_name) {
    DynamicHeap out = h;
    ObjRef ref{out.free_};
    out.classes_[ref.ref] = class_name;
    ++out.free_;
    return {ref, std::move(out)};
}

} // namespace seanode
