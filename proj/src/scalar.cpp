#include "cremona/scalar.hpp"

#include <algorithm>

#include "cremona/errors.hpp"

namespace cremona {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::IsAPoint: return "IsAPoint";
    case ErrorCode::NotOnCenter: return "NotOnCenter";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::DegenerateLine: return "DegenerateLine";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::CollinearBasePoints: return "CollinearBasePoints";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotDecontracted: return "NotDecontracted";
    case ErrorCode::NotJonquieres: return "NotJonquieres";
    case ErrorCode::NotInDecL: return "NotInDecL";
    case ErrorCode::NotInAL: return "NotInAL";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::IrrationalBasePoints: return "IrrationalBasePoints";
  }
  return "Unknown";
}

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  auto valid_int = [](std::string_view part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    fail(ErrorCode::ParseError, "malformed scalar '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

std::size_t bit_length(const Scalar& s) {
  return std::max(mpz_sizeinbase(s.get_num_mpz_t(), 2), mpz_sizeinbase(s.get_den_mpz_t(), 2));
}

}  // namespace cremona
