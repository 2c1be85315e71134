#pragma once

#include <stdexcept>
#include <string>

namespace pathvar {

/// A Lagrangian's domain guard rejected the path data at some node.
class GuardError : public std::runtime_error {
public:
    GuardError(int node, double t, std::string reason)
        : std::runtime_error("domain guard failed at node " + std::to_string(node) +
                             " (t=" + std::to_string(t) + "): " + reason),
          node_(node), t_(t), reason_(std::move(reason)) {}

    int node() const { return node_; }
    double t() const { return t_; }
    const std::string& reason() const { return reason_; }

private:
    int node_;
    double t_;
    std::string reason_;
};

/// Malformed CSV input; line numbers are 1-based.
class CsvError : public std::runtime_error {
public:
    CsvError(int line, const std::string& what)
        : std::runtime_error("csv line " + std::to_string(line) + ": " + what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

} // namespace pathvar
