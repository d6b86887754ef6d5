#include "seanode/format.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace seanode {

namespace {

using Json = nlohmann::ordered_json;

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the index-th node record, found by its "kind" key. Records are
// written one per line, so this is exact for canonical and hand-written files.
std::size_t line_of_record(std::string_view text, std::size_t index) {
    std::size_t pos = 0;
    for (std::size_t i = 0;; ++i) {
        pos = text.find("\"kind\"", pos);
        if (pos == std::string_view::npos)
            return 0;
        if (i == index)
            return line_of_offset(text, pos);
        ++pos;
    }
}

Json signature_json(const Signature& sig) {
    Json params = Json::array();
    for (const auto& t : sig.param_types)
        params.push_back(t);
    return Json{{"class", sig.class_name}, {"name", sig.method_name}, {"params", std::move(params)}};
}

Json value_json(const Value& v) {
    if (const auto* i = std::get_if<IntVal>(&v))
        return Json{{"int", i->bits}};
    if (const auto* r = std::get_if<ObjRef>(&v))
        return Json{{"ref", r->ref}};
    return Json{{"undef", true}};
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json fields_json(const NodeKind& n) {
    Json f = Json::object();
    auto opt = [&](const char* key, const std::optional<NodeId>& id) {
        if (id)
            f[key] = *id;
    };
    std::visit(Overloaded{
                   [&](const NoNode&) {},
                   [&](const ConstantNode& k) { f["const"] = value_json(k.value); },
                   [&](const ParameterNode& k) { f["index"] = k.index; },
                   [&](const ValuePhiNode& k) {
                       f["selfId"] = k.self_id;
                       f["values"] = k.values;
                       f["merge"] = k.merge;
                   },
                   [&](const NegateNode& k) { f["value"] = k.value; },
                   [&](const AddNode& k) {
                       f["x"] = k.x;
                       f["y"] = k.y;
                   },
                   [&](const MulNode& k) {
                       f["x"] = k.x;
                       f["y"] = k.y;
                   },
                   [&](const IntegerLessThanNode& k) {
                       f["x"] = k.x;
                       f["y"] = k.y;
                   },
                   [&](const ConditionalNode& k) {
                       f["condition"] = k.condition;
                       f["trueValue"] = k.true_value;
                       f["falseValue"] = k.false_value;
                   },
                   [&](const ValueProxyNode& k) {
                       f["value"] = k.value;
                       f["loopExit"] = k.loop_exit;
                   },
                   [&](const MethodCallTargetNode& k) {
                       f["targetMethod"] = signature_json(k.target_method);
                       f["arguments"] = k.arguments;
                   },
                   [&](const StartNode& k) { f["next"] = k.next; },
                   [&](const BeginNode& k) { f["next"] = k.next; },
                   [&](const RefNode& k) { f["next"] = k.next; },
                   [&](const IfNode& k) {
                       f["condition"] = k.condition;
                       f["trueSuccessor"] = k.true_successor;
                       f["falseSuccessor"] = k.false_successor;
                   },
                   [&](const EndNode&) {},
                   [&](const MergeNode& k) {
                       f["ends"] = k.ends;
                       f["next"] = k.next;
                   },
                   [&](const LoopBeginNode& k) {
                       f["ends"] = k.ends;
                       f["next"] = k.next;
                   },
                   [&](const LoopEndNode& k) { f["loopBegin"] = k.loop_begin; },
                   [&](const LoopExitNode& k) {
                       f["loopBegin"] = k.loop_begin;
                       f["next"] = k.next;
                   },
                   [&](const NewInstanceNode& k) {
                       f["selfId"] = k.self_id;
                       f["instanceClass"] = k.instance_class;
                       f["next"] = k.next;
                   },
                   [&](const LoadFieldNode& k) {
                       f["selfId"] = k.self_id;
                       f["field"] = k.field;
                       opt("objectOpt", k.object);
                       f["next"] = k.next;
                   },
                   [&](const StoreFieldNode& k) {
                       f["selfId"] = k.self_id;
                       f["field"] = k.field;
                       f["value"] = k.value;
                       opt("objectOpt", k.object);
                       f["next"] = k.next;
                   },
                   [&](const ReturnNode& k) { opt("resultOpt", k.result); },
                   [&](const InvokeNode& k) {
                       f["selfId"] = k.self_id;
                       f["callTarget"] = k.call_target;
                       f["next"] = k.next;
                   },
                   [&](const InvokeWithExceptionNode& k) {
                       f["selfId"] = k.self_id;
                       f["callTarget"] = k.call_target;
                       f["next"] = k.next;
                       f["exceptionEdge"] = k.exception_edge;
                   },
                   [&](const UnwindNode& k) { f["exception"] = k.exception; },
               },
               n);
    return f;
}

/// Reads the fields object of one node record, tracking which keys were
/// consumed so leftovers can be rejected.
class FieldReader {
public:
    FieldReader(const Json& fields, std::size_t line, std::string context)
        : fields_(fields), line_(line), context_(std::move(context)) {
        if (!fields_.is_object())
            fail("\"fields\" must be an object");
    }

    [[noreturn]] void fail(const std::string& reason) const { throw ParseError(line_, context_ + ": " + reason); }

    const Json& required(const char* key) {
        auto it = fields_.find(key);
        if (it == fields_.end())
            fail(std::string("missing field \"") + key + "\"");
        used_.insert(key);
        return *it;
    }

    bool present(const char* key) const { return fields_.contains(key); }

    NodeId id_value(const Json& j, const char* key) const {
        if (!j.is_number_unsigned() || j.get<std::uint64_t>() > std::numeric_limits<NodeId>::max())
            fail(std::string("field \"") + key + "\" must be a node id");
        return j.get<NodeId>();
    }

    NodeId edge(const char* key) { return id_value(required(key), key); }

    std::vector<NodeId> edges(const char* key) {
        const Json& j = required(key);
        if (!j.is_array())
            fail(std::string("field \"") + key + "\" must be an array of node ids");
        std::vector<NodeId> out;
        for (const auto& e : j)
            out.push_back(id_value(e, key));
        return out;
    }

    std::optional<NodeId> optional_edge(const char* key) {
        if (!present(key))
            return std::nullopt;
        return edge(key);
    }

    std::string text(const char* key) {
        const Json& j = required(key);
        if (!j.is_string())
            fail(std::string("field \"") + key + "\" must be a string");
        return j.get<std::string>();
    }

    std::size_t index(const char* key) {
        const Json& j = required(key);
        if (!j.is_number_unsigned())
            fail(std::string("field \"") + key + "\" must be a non-negative integer");
        return j.get<std::size_t>();
    }

    Value constant(const char* key) {
        const Json& j = required(key);
        if (!j.is_object() || j.size() != 1)
            fail("constant must be an object with one of \"int\", \"ref\", \"undef\"");
        if (j.contains("int")) {
            const Json& v = j["int"];
            if (!v.is_number_integer() || v.get<std::int64_t>() < std::numeric_limits<std::int32_t>::min() ||
                v.get<std::int64_t>() > std::numeric_limits<std::int32_t>::max())
                fail("\"int\" constant must be a signed 32-bit integer");
            return IntVal{static_cast<std::int32_t>(v.get<std::int64_t>())};
        }
        if (j.contains("ref")) {
            if (!j["ref"].is_number_unsigned())
                fail("\"ref\" constant must be a non-negative integer");
            return ObjRef{j["ref"].get<std::uint64_t>()};
        }
        if (j.contains("undef"))
            return UndefVal{};
        fail("constant must be an object with one of \"int\", \"ref\", \"undef\"");
    }

    Signature signature(const char* key);

    void finish() const {
        for (const auto& [key, value] : fields_.items()) {
            if (!used_.count(key))
                fail("unexpected field \"" + key + "\"");
        }
    }

private:
    const Json& fields_;
    std::size_t line_;
    std::string context_;
    std::set<std::string> used_;
};

Signature read_signature(const Json& j, const std::function<void(const std::string&)>& fail) {
    if (!j.is_object())
        fail("signature must be an object");
    for (const auto& [key, value] : j.items()) {
        if (key != "class" && key != "name" && key != "params")
            fail("unexpected signature field \"" + key + "\"");
    }
    if (!j.contains("class") || !j["class"].is_string() || !j.contains("name") || !j["name"].is_string())
        fail("signature needs string \"class\" and \"name\"");
    if (!j.contains("params") || !j["params"].is_array())
        fail("signature needs a \"params\" array");
    Signature sig{j["class"].get<std::string>(), j["name"].get<std::string>(), {}};
    for (const auto& t : j["params"]) {
        if (!t.is_string())
            fail("parameter types must be strings");
        sig.param_types.push_back(t.get<std::string>());
    }
    return sig;
}

Signature FieldReader::signature(const char* key) {
    return read_signature(required(key), [this](const std::string& r) { fail(r); });
}

NodeKind read_node(const std::string& kind, FieldReader& r) {
    NodeKind n;
    if (kind == "ConstantNode")
        n = ConstantNode{r.constant("const")};
    else if (kind == "ParameterNode")
        n = ParameterNode{r.index("index")};
    else if (kind == "ValuePhiNode") {
        ValuePhiNode k;
        k.self_id = r.edge("selfId");
        k.values = r.edges("values");
        k.merge = r.edge("merge");
        n = k;
    } else if (kind == "NegateNode")
        n = NegateNode{r.edge("value")};
    else if (kind == "AddNode")
        n = AddNode{r.edge("x"), r.edge("y")};
    else if (kind == "MulNode")
        n = MulNode{r.edge("x"), r.edge("y")};
    else if (kind == "IntegerLessThanNode")
        n = IntegerLessThanNode{r.edge("x"), r.edge("y")};
    else if (kind == "ConditionalNode") {
        ConditionalNode k;
        k.condition = r.edge("condition");
        k.true_value = r.edge("trueValue");
        k.false_value = r.edge("falseValue");
        n = k;
    } else if (kind == "ValueProxyNode")
        n = ValueProxyNode{r.edge("value"), r.edge("loopExit")};
    else if (kind == "MethodCallTargetNode") {
        MethodCallTargetNode k;
        k.target_method = r.signature("targetMethod");
        k.arguments = r.edges("arguments");
        n = k;
    } else if (kind == "StartNode")
        n = StartNode{r.edge("next")};
    else if (kind == "BeginNode")
        n = BeginNode{r.edge("next")};
    else if (kind == "RefNode")
        n = RefNode{r.edge("next")};
    else if (kind == "IfNode") {
        IfNode k;
        k.condition = r.edge("condition");
        k.true_successor = r.edge("trueSuccessor");
        k.false_successor = r.edge("falseSuccessor");
        n = k;
    } else if (kind == "EndNode")
        n = EndNode{};
    else if (kind == "MergeNode") {
        MergeNode k;
        k.ends = r.edges("ends");
        k.next = r.edge("next");
        n = k;
    } else if (kind == "LoopBeginNode") {
        LoopBeginNode k;
        k.ends = r.edges("ends");
        k.next = r.edge("next");
        n = k;
    } else if (kind == "LoopEndNode")
        n = LoopEndNode{r.edge("loopBegin")};
    else if (kind == "LoopExitNode")
        n = LoopExitNode{r.edge("loopBegin"), r.edge("next")};
    else if (kind == "NewInstanceNode") {
        NewInstanceNode k;
        k.self_id = r.edge("selfId");
        k.instance_class = r.text("instanceClass");
        k.next = r.edge("next");
        n = k;
    } else if (kind == "LoadFieldNode") {
        LoadFieldNode k;
        k.self_id = r.edge("selfId");
        k.field = r.text("field");
        k.object = r.optional_edge("objectOpt");
        k.next = r.edge("next");
        n = k;
    } else if (kind == "StoreFieldNode") {
        StoreFieldNode k;
        k.self_id = r.edge("selfId");
        k.field = r.text("field");
        k.value = r.edge("value");
        k.object = r.optional_edge("objectOpt");
        k.next = r.edge("next");
        n = k;
    } else if (kind == "ReturnNode")
        n = ReturnNode{r.optional_edge("resultOpt")};
    else if (kind == "InvokeNode") {
        InvokeNode k;
        k.self_id = r.edge("selfId");
        k.call_target = r.edge("callTarget");
        k.next = r.edge("next");
        n = k;
    } else if (kind == "InvokeWithExceptionNode") {
        InvokeWithExceptionNode k;
        k.self_id = r.edge("selfId");
        k.call_target = r.edge("callTarget");
        k.next = r.edge("next");
        k.exception_edge = r.edge("exceptionEdge");
        n = k;
    } else if (kind == "UnwindNode")
        n = UnwindNode{r.edge("exception")};
    else
        return NoNode{};
    r.finish();
    return n;
}

void check_keys(const Json& obj, std::initializer_list<const char*> allowed, std::size_t line,
                const std::string& what) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end())
            throw ParseError(line, what + ": unexpected key \"" + key + "\"");
    }
}

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

} // namespace

Program parse_program(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(line_of_offset(text, e.byte), e.what());
    }
    if (!doc.is_object())
        throw ParseError(1, "top level must be an object");
    check_keys(doc, {"version", "methods"}, 1, "program");
    if (!doc.contains("version") || doc["version"] != kFormatVersion)
        throw ParseError(1, "expected \"version\": \"" + std::string(kFormatVersion) + "\"");
    if (!doc.contains("methods") || !doc["methods"].is_array())
        throw ParseError(1, "expected a \"methods\" array");

    Program program;
    std::size_t record = 0;
    for (const auto& method : doc["methods"]) {
        std::size_t line = line_of_record(text, record);
        if (!method.is_object() || !method.contains("signature") || !method.contains("nodes") ||
            !method["nodes"].is_array())
            throw ParseError(line, "method needs \"signature\" and a \"nodes\" array");
        check_keys(method, {"signature", "nodes"}, line, "method");
        Signature sig = read_signature(method["signature"], [&](const std::string& r) {
            throw ParseError(line, r);
        });
        const std::string where = to_string(sig);
        if (program.count(sig))
            throw ParseError(line, "duplicate method " + where);

        Graph::NodeMap nodes;
        for (const auto& rec : method["nodes"]) {
            std::size_t rec_line = line_of_record(text, record++);
            if (!rec.is_object() || !rec.contains("id") || !rec.contains("kind") || !rec.contains("fields"))
                throw ParseError(rec_line, where + ": node record needs \"id\", \"kind\" and \"fields\"");
            check_keys(rec, {"id", "kind", "fields"}, rec_line, where);
            if (!rec["id"].is_number_unsigned() || rec["id"].get<std::uint64_t>() > std::numeric_limits<NodeId>::max())
                throw ParseError(rec_line, where + ": \"id\" must be a node id");
            if (!rec["kind"].is_string())
                throw ParseError(rec_line, where + ": \"kind\" must be a string");
            NodeId id = rec["id"].get<NodeId>();
            std::string kind = rec["kind"].get<std::string>();
            FieldReader reader(rec["fields"], rec_line, where + " node " + std::to_string(id));
            NodeKind n = read_node(kind, reader);
            if (holds<NoNode>(n))
                throw UnknownKind("line " + std::to_string(rec_line) + ": " + where + " node " + std::to_string(id) +
                                  ": unknown kind \"" + kind + "\"");
            if (!nodes.emplace(id, std::move(n)).second)
                throw DuplicateId("line " + std::to_string(rec_line) + ": " + where + ": duplicate node id " +
                                  std::to_string(id));
        }
        program.emplace(std::move(sig), Graph(std::move(nodes)));
    }
    return program;
}

Program load_program(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw LoadError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_program(buf.str());
}

std::string to_text(const Program& program) {
    std::ostringstream os;
    os << "{\n  \"version\": \"" << kFormatVersion << "\",\n  \"methods\": [";
    bool first_method = true;
    for (const auto& [sig, g] : program) {
        os << (first_method ? "\n" : ",\n");
        first_method = false;
        os << "    {\n      \"signature\": " << signature_json(sig).dump() << ",\n      \"nodes\": [";
        bool first_node = true;
        for (const auto& [nid, n] : g.nodes()) {
            Json rec{{"id", nid}, {"kind", std::string(kind_name(n))}, {"fields", fields_json(n)}};
            os << (first_node ? "\n" : ",\n") << "        " << rec.dump();
            first_node = false;
        }
        os << (first_node ? "]" : "\n      ]") << "\n    }";
    }
    os << (first_method ? "]" : "\n  ]") << "\n}\n";
    return os.str();
}

void save_program(const Program& program, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path.string());
    out << to_text(program);
}

Signature parse_signature(std::string_view text) {
    Signature sig;
    std::string_view head = text;
    auto open = text.find('(');
    if (open != std::string_view::npos) {
        if (text.back() != ')')
            throw Error("malformed signature \"" + std::string(text) + "\"");
        head = text.substr(0, open);
        std::string_view params = text.substr(open + 1, text.size() - open - 2);
        while (!params.empty()) {
            auto comma = params.find(',');
            sig.param_types.emplace_back(params.substr(0, comma));
            if (comma == std::string_view::npos)
                break;
            params.remove_prefix(comma + 1);
        }
    }
    auto dot = head.rfind('.');
    if (dot == std::string_view::npos) {
        sig.method_name = std::string(head);
    } else {
        sig.class_name = std::string(head.substr(0, dot));
        sig.method_name = std::string(head.substr(dot + 1));
    }
    if (sig.method_name.empty())
        throw Error("malformed signature \"" + std::string(text) + "\"");
    return sig;
}

Signature find_method(const Program& program, std::string_view text) {
    Signature want = parse_signature(text);
    if (text.find('(') != std::string_view::npos) {
        if (!program.count(want))
            throw Error("no method " + to_string(want));
        return want;
    }
    std::vector<Signature> matches;
    for (const auto& entry : program) {
        const Signature& sig = entry.first;
        if (sig.method_name == want.method_name && (want.class_name.empty() || sig.class_name == want.class_name))
            matches.push_back(sig);
    }
    if (matches.empty())
        throw Error("no method named \"" + std::string(text) + "\"");
    if (matches.size() > 1)
        throw Error("\"" + std::string(text) + "\" is ambiguous; give the full signature");
    return matches.front();
}

std::string to_dot(const Graph& g, std::string_view name) {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(name) << "\" {\n";
    os << "  node [shape=box, fontname=\"monospace\"];\n";
    for (const auto& [nid, n] : g.nodes()) {
        os << "  n" << nid << " [label=\"" << nid << ": " << kind_name(n) << "\"";
        if (is_data(n))
            os << ", shape=ellipse";
        os << "];\n";
    }
    for (const auto& [nid, n] : g.nodes()) {
        for (NodeId s : successors_of(n))
            os << "  n" << nid << " -> n" << s << ";\n";
        for (NodeId in : inputs_of(n))
            os << "  n" << in << " -> n" << nid << " [style=dashed];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace seanode
