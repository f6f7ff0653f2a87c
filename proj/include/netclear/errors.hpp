#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netclear {

// Node indices carried by errors are 1-based, matching report output.

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class RowSumError : public ValidationError {
public:
    RowSumError(std::size_t row_1based, double sum)
        : ValidationError("liability row " + std::to_string(row_1based) +
                          " sums to " + std::to_string(sum) + ", expected 1"),
          row(row_1based), sum(sum) {}
    std::size_t row;
    double sum;
};

class NegativeEntryError : public ValidationError {
public:
    NegativeEntryError(std::string field, std::size_t index_1based, double value)
        : ValidationError("negative entry in " + field + " at index " +
                          std::to_string(index_1based)),
          field(std::move(field)), index(index_1based), value(value) {}
    std::string field;
    std::size_t index;
    double value;
};

class NonPositiveObligationError : public ValidationError {
public:
    NonPositiveObligationError(std::size_t index_1based, double value)
        : ValidationError("obligation at node " + std::to_string(index_1based) +
                          " must be strictly positive"),
          index(index_1based), value(value) {}
    std::size_t index;
    double value;
};

class NotAbsorbingError : public ValidationError {
public:
    NotAbsorbingError(std::size_t row_1based, double sum)
        : ValidationError("restricted row for node " + std::to_string(row_1based) +
                          " sums to " + std::to_string(sum) +
                          "; the node set is not absorbing"),
          row(row_1based), sum(sum) {}
    std::size_t row;
    double sum;
};

class EmptySetError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The two-sided iteration stopped with the bracket still open.  Either the
// input has a cashless absorbing region (the fixed points form a continuum
// and no single limit exists) or max_iter was too small.
class BracketGapError : public SolverError {
public:
    BracketGapError(double gap, std::size_t iterations)
        : SolverError("bracket gap stagnated at " + std::to_string(gap) +
                      " after " + std::to_string(iterations) + " iterations"),
          gap(gap), iterations(iterations) {}
    double gap;
    std::size_t iterations;
};

class NonConvergenceError : public SolverError {
public:
    NonConvergenceError(double last_delta, std::size_t iterations)
        : SolverError("iteration did not reach tolerance after " +
                      std::to_string(iterations) + " steps (last step moved " +
                      std::to_string(last_delta) + ")"),
          last_delta(last_delta), iterations(iterations) {}
    double last_delta;
    std::size_t iterations;
};

class SizeLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InfeasibleSpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace netclear
