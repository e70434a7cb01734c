#pragma once

#include <stdexcept>
#include <string>

namespace causal {

// Every failure mode exposed by the library. The CLI maps any of these to
// exit code 2; tests match on the kind rather than the message text.
enum class ErrorKind {
    InvalidComponents,        // components malformed or domains disagree
    RangeViolation,           // clause (a): value outside the declared range
    DependenceViolation,      // clause (b): =(PA_Y; Y) fails on the support
    FunctionClash,            // clause (c): row contradicts a function table entry
    UnknownVariable,
    ParseError,
    IllFormed,                // formula fits no supported language
    IllFormedSelector,        // selector contains dependence/probabilistic parts
    CyclicGraph,
    NonRecursive,
    NotFullyDefined,
    InconsistentIntervention,
    MultipleSolutions,
    NoSolution,
    FormalEntryEncountered,   // truth relation touched a formal term
    UnsupportedPolicy,
    EmptySupport,
    NotCO,
    NotDNF,
    NotSupported,
    SearchCapExceeded,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidComponents: return "InvalidComponents";
        case ErrorKind::RangeViolation: return "RangeViolation";
        case ErrorKind::DependenceViolation: return "DependenceViolation";
        case ErrorKind::FunctionClash: return "FunctionClash";
        case ErrorKind::UnknownVariable: return "UnknownVariable";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IllFormed: return "IllFormed";
        case ErrorKind::IllFormedSelector: return "IllFormedSelector";
        case ErrorKind::CyclicGraph: return "CyclicGraph";
        case ErrorKind::NonRecursive: return "NonRecursive";
        case ErrorKind::NotFullyDefined: return "NotFullyDefined";
        case ErrorKind::InconsistentIntervention: return "InconsistentIntervention";
        case ErrorKind::MultipleSolutions: return "MultipleSolutions";
        case ErrorKind::NoSolution: return "NoSolution";
        case ErrorKind::FormalEntryEncountered: return "FormalEntryEncountered";
        case ErrorKind::UnsupportedPolicy: return "UnsupportedPolicy";
        case ErrorKind::EmptySupport: return "EmptySupport";
        case ErrorKind::NotCO: return "NotCO";
        case ErrorKind::NotDNF: return "NotDNF";
        case ErrorKind::NotSupported: return "NotSupported";
        case ErrorKind::SearchCapExceeded: return "SearchCapExceeded";
    }
    return "Error";
}

} // namespace causal
