#include "evego/types.hpp"

#include <cmath>

namespace evego {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateLine: return "DegenerateLine";
    case ErrorCode::DegenerateFlow: return "DegenerateFlow";
    case ErrorCode::InsufficientEvents: return "InsufficientEvents";
    case ErrorCode::DegenerateEigenvalue: return "DegenerateEigenvalue";
    case ErrorCode::AmbiguousDirection: return "AmbiguousDirection";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::PureRotationDetected: return "PureRotationDetected";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::UndefinedMetric: return "UndefinedMetric";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NoConsensus: return "NoConsensus";
    case ErrorCode::RejectionExhausted: return "RejectionExhausted";
    case ErrorCode::BehindCamera: return "BehindCamera";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigParseError: return "ConfigParseError";
  }
  return "UnknownError";
}

int error_exit_code(ErrorCode code) {
  return 10 + static_cast<int>(code);
}

namespace {

template <typename V>
V canonical_sign_impl(const V& v) {
  int idx = 0;
  double best = std::abs(v[0]);
  for (int i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > best) {
      best = std::abs(v[i]);
      idx = i;
    }
  }
  return v[idx] < 0.0 ? V(-v) : v;
}

}  // namespace

Vec3 canonical_sign(const Vec3& v) { return canonical_sign_impl(v); }
Vec6 canonical_sign(const Vec6& v) { return canonical_sign_impl(v); }

}  // namespace evego
