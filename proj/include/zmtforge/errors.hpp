#pragma once

#include <stdexcept>
#include <string>

namespace zmtforge {

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegreeCapExceeded : EngineError {
    explicit DegreeCapExceeded(const std::string& what) : EngineError(what) {}
};

struct ExponentCapExceeded : EngineError {
    explicit ExponentCapExceeded(const std::string& what) : EngineError(what) {}
};

struct BranchBlowup : EngineError {
    explicit BranchBlowup(const std::string& what) : EngineError(what) {}
};

struct ShapeError : EngineError {
    explicit ShapeError(const std::string& what) : EngineError(what) {}
};

struct UnknownVariable : EngineError {
    explicit UnknownVariable(const std::string& what) : EngineError(what) {}
};

struct DegenerateResultant : EngineError {
    explicit DegenerateResultant(const std::string& what) : EngineError(what) {}
};

struct ModuleGensInsufficient : EngineError {
    explicit ModuleGensInsufficient(const std::string& what) : EngineError(what) {}
};

struct WitnessSearchExhausted : EngineError {
    explicit WitnessSearchExhausted(const std::string& what) : EngineError(what) {}
};

struct NotADivisor : EngineError {
    explicit NotADivisor(const std::string& what) : EngineError(what) {}
};

struct PNotAnnihilating : EngineError {
    explicit PNotAnnihilating(const std::string& what) : EngineError(what) {}
};

struct SubalgebraWitnessMissing : EngineError {
    explicit SubalgebraWitnessMissing(const std::string& what) : EngineError(what) {}
};

struct HypothesisNotSatisfied : EngineError {
    explicit HypothesisNotSatisfied(const std::string& what) : EngineError(what) {}
};

struct JacobianNotUnit : EngineError {
    explicit JacobianNotUnit(const std::string& what) : EngineError(what) {}
};

struct InvariantRecheckFailed : EngineError {
    explicit InvariantRecheckFailed(const std::string& what) : EngineError(what) {}
};

struct A1NotUnit : EngineError {
    explicit A1NotUnit(const std::string& what) : EngineError(what) {}
};

struct ZeroCheckFailed : EngineError {
    explicit ZeroCheckFailed(const std::string& what) : EngineError(what) {}
};

struct MembershipSearchExhausted : EngineError {
    explicit MembershipSearchExhausted(const std::string& what) : EngineError(what) {}
};

// Parse errors carry a position into the source text.
struct ParseError : EngineError {
    int line = 0;
    int column = 0;
    ParseError(const std::string& what, int line_, int column_)
        : EngineError(what + " at " + std::to_string(line_) + ":" + std::to_string(column_)),
          line(line_), column(column_) {}
};

} // namespace zmtforge
