#pragma once

#include <stdexcept>
#include <string>

namespace treebed {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter pair (n, p) that the construction cannot use. The message
/// names the violated constraint.
class InvalidParams : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(got)) {}
};

class ColorMismatch : public Error {
public:
    ColorMismatch(int a, int b)
        : Error("color mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class LevelOrder : public Error {
public:
    using Error::Error;
};

/// Parent search ran out of levels. `k_reached` is the lowest level inspected.
class ScanExhausted : public Error {
public:
    ScanExhausted(int k_reached, const std::string& context = {})
        : Error("parent scan exhausted at level " + std::to_string(k_reached) +
                (context.empty() ? std::string{} : " (" + context + ")")),
          k_reached(k_reached) {}
    int k_reached;
};

class ResourceLimit : public Error {
public:
    using Error::Error;
};

class Overflow : public Error {
public:
    using Error::Error;
};

class DegenerateSample : public Error {
public:
    using Error::Error;
};

}  // namespace treebed
