#pragma once

#include <stdexcept>
#include <string>

namespace hf {

// A configured resource limit was exceeded (oracle size, door count,
// grid area, solver state budget). CLI maps this to exit code 3.
class CapError : public std::runtime_error {
public:
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input document (DIMACS, QDIMACS, level text, JSON schema).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hf
