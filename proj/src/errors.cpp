#include "contracta/errors.hpp"

namespace contracta {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::argument: return "argument";
    case ErrorCode::domain: return "domain";
    case ErrorCode::closure: return "closure";
    case ErrorCode::evaluation: return "evaluation";
    case ErrorCode::parse: return "parse";
    case ErrorCode::audit: return "audit";
    case ErrorCode::config_syntax: return "config_syntax";
    case ErrorCode::config_unknown_key: return "config_unknown_key";
    case ErrorCode::config_type: return "config_type";
    case ErrorCode::config_constraint: return "config_constraint";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace contracta
