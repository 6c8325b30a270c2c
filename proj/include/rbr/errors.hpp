#pragma once

#include <stdexcept>
#include <string>

namespace rbr {

// Malformed or inconsistent input data (files, configs, seed lists).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A brute-force oracle was asked to run beyond its enumeration guard.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rbr
