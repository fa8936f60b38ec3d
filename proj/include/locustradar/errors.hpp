#pragma once

#include <stdexcept>
#include <string>

namespace locust {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error("ParseError: " + what) {}
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error("ParseError at byte " + std::to_string(offset) + ": " + what) {}
    static ParseError at_row(std::size_t row, const std::string& reason) {
        return ParseError("row " + std::to_string(row) + ": " + reason);
    }
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error("ValidationError: " + what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error("IoError: " + what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error("DimensionMismatch: " + what) {}
};

struct IrregularGridError : std::runtime_error {
    explicit IrregularGridError(const std::string& what) : std::runtime_error("IrregularGridError: " + what) {}
};

struct CeilingBelowAntenna : std::runtime_error {
    explicit CeilingBelowAntenna(const std::string& what) : std::runtime_error("CeilingBelowAntenna: " + what) {}
};

struct EmptyVolume : std::runtime_error {
    explicit EmptyVolume(const std::string& what) : std::runtime_error("EmptyVolume: " + what) {}
};

struct NonMonotonicTime : std::runtime_error {
    explicit NonMonotonicTime(const std::string& what) : std::runtime_error("NonMonotonicTime: " + what) {}
};

struct InsufficientObservations : std::runtime_error {
    explicit InsufficientObservations(const std::string& what)
        : std::runtime_error("InsufficientObservations: " + what) {}
};

struct LatitudeOutOfCoverage : std::runtime_error {
    explicit LatitudeOutOfCoverage(const std::string& what)
        : std::runtime_error("LatitudeOutOfCoverage: " + what) {}
};

struct SpecError : std::runtime_error {
    explicit SpecError(const std::string& what) : std::runtime_error("SpecError: " + what) {}
};

struct TimeMismatch : std::runtime_error {
    explicit TimeMismatch(const std::string& what) : std::runtime_error("TimeMismatch: " + what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error("ConfigError: " + what) {}
};

} // namespace locust
