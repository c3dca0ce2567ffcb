#include "percolab/error.hpp"

namespace percolab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::OddDegreeSum: return "OddDegreeSum";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::RetryLimitExceeded: return "RetryLimitExceeded";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::WrongResidueClass: return "WrongResidueClass";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::TooManyEdges: return "TooManyEdges";
    case ErrorCode::AlphaTooLarge: return "AlphaTooLarge";
    case ErrorCode::SampleGraphMismatch: return "SampleGraphMismatch";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::AlphaNotSupercritical: return "AlphaNotSupercritical";
    case ErrorCode::AlphaCritical: return "AlphaCritical";
    case ErrorCode::KTooLargeForBound: return "KTooLargeForBound";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::WindowEmpty: return "WindowEmpty";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace percolab
