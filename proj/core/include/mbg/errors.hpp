#pragma once

#include <stdexcept>
#include <string>

namespace mbg {

// Malformed or out-of-range input (bad vertex index, bad file, bad flag value).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A documented size/cost cap was exceeded; the operation refuses rather than
// approximates.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// A stated precondition does not hold (e.g. matrix not abundant).
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// A strategy returned an occupied or out-of-range vertex; the message names
// the offending strategy.
class strategy_fault : public std::runtime_error {
public:
    explicit strategy_fault(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mbg
