#pragma once

#include <stdexcept>
#include <string>

namespace homexp {

// Base for all library errors. The CLI maps subclasses to exit codes:
// precondition/argument -> 2, resource -> 3.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation was called outside its stated domain (bad weights,
// missing validity certificate, degenerate distribution, ...).
class precondition_error : public error {
public:
    explicit precondition_error(const std::string& msg) : error(msg) {}
};

// A caller-supplied argument is malformed (invalid edge, node out of
// range, non-isomorphic balls, unparsable file).
class argument_error : public error {
public:
    explicit argument_error(const std::string& msg) : error(msg) {}
};

// A configured budget or cap would be exceeded; the message names the cap.
class resource_error : public error {
public:
    explicit resource_error(const std::string& msg) : error(msg) {}
};

}  // namespace homexp
