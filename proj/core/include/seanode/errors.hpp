#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace seanode {

using NodeId = std::uint32_t;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Illegal graph edit: inserting over an occupied id, replacing an unmapped
/// id, or storing NoNode.
class InvalidEdit : public Error {
public:
    using Error::Error;
};

/// A value of the wrong shape reached an operation (e.g. branching on UndefVal).
class TypeMismatch : public Error {
public:
    using Error::Error;
};

class EvalStuck : public Error {
public:
    EvalStuck(NodeId nid, const std::string& reason)
        : Error("eval stuck at node " + std::to_string(nid) + ": " + reason), nid_(nid), reason_(reason) {}
    /// Raised by list evaluation; index is the position of the failing element.
    EvalStuck(NodeId nid, const std::string& reason, std::size_t index)
        : Error("eval stuck at node " + std::to_string(nid) + " (list element " + std::to_string(index) +
                "): " + reason),
          nid_(nid), reason_(reason), index_(index) {}

    NodeId nid() const noexcept { return nid_; }
    const std::string& reason() const noexcept { return reason_; }
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    NodeId nid_;
    std::string reason_;
    std::optional<std::size_t> index_;
};

class ParamOutOfRange : public Error {
public:
    ParamOutOfRange(NodeId nid, std::size_t index, std::size_t count)
        : Error("parameter " + std::to_string(index) + " out of range (" + std::to_string(count) +
                " supplied) at node " + std::to_string(nid)),
          nid_(nid), index_(index) {}

    NodeId nid() const noexcept { return nid_; }
    std::size_t index() const noexcept { return index_; }

private:
    NodeId nid_;
    std::size_t index_;
};

/// No local control-flow rule applies to the configuration.
class StepStuck : public Error {
public:
    StepStuck(NodeId nid, const std::string& reason)
        : Error("stuck at node " + std::to_string(nid) + ": " + reason), nid_(nid) {}

    NodeId nid() const noexcept { return nid_; }

private:
    NodeId nid_;
};

class CyclicExpression : public Error {
public:
    explicit CyclicExpression(NodeId nid)
        : Error("expression at node " + std::to_string(nid) + " is cyclic"), nid_(nid) {}

    NodeId nid() const noexcept { return nid_; }

private:
    NodeId nid_;
};

/// Errors raised while loading a program file.
class LoadError : public Error {
public:
    using Error::Error;
};

class ParseError : public LoadError {
public:
    ParseError(std::size_t line, const std::string& reason)
        : LoadError("line " + std::to_string(line) + ": " + reason), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DuplicateId : public LoadError {
public:
    using LoadError::LoadError;
};

class UnknownKind : public LoadError {
public:
    using LoadError::LoadError;
};

} // namespace seanode
