#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

namespace refchain {

inline const icu::Normalizer2& nfkc_normalizer() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKCInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
      throw std::runtime_error("ICU NFKC normalizer unavailable");
    }
    return n;
  }();
  return *instance;
}

// NFKC-normalizes a UTF-8 string. Head nouns are compared in this form so
// that fullwidth/halfwidth variants of one surface form compare equal.
inline std::string nfkc(std::string_view text) {
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfkc_normalizer().normalize(source, status);
  if (U_FAILURE(status)) {
    return std::string(text);
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

}  // namespace refchain
