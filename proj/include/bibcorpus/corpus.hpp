#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bibcorpus/text.hpp"

namespace bibcorpus {

/// One row of the unified corpus.
struct Publication {
  std::int64_t id = 0;
  std::string title;
  std::string normalized_title;
  std::optional<std::string> abstract;
  std::string venue;
  std::optional<int> year;
  std::optional<std::string> volume;
  std::optional<std::string> doi;
  std::optional<std::int64_t> n_citations;

  friend bool operator==(const Publication&, const Publication&) = default;
};

struct Author {
  std::int64_t id = 0;
  std::string source_key;
  std::string display_name;

  friend bool operator==(const Author&, const Author&) = default;
};

struct Authorship {
  std::int64_t author_id = 0;
  std::int64_t publication_id = 0;

  friend auto operator<=>(const Authorship&, const Authorship&) = default;
};

namespace detail {

// ASCII base letters for U+00C0..U+017F; "" where no single base applies.
inline std::string_view latin_base(char32_t c) {
  static constexpr std::string_view kLatin1 = "aaaaaa?ceeeeiiiidnooooo?ouuuuy??aaaaaa?ceeeeiiiidnooooo?ouuuuy?y";
  static constexpr std::string_view kExtA =
      "aaaaaaccccccccddddeeeeeeeeeegggggggghhhhiiiiiiiiiiiijjkkkllllllllllnnnnnnnnnoooooooorrrrrrssssssssttttttuuuuuuuuuuuuwwyyyzzzzzzs";
  if (c >= 0xC0 && c <= 0xFF) {
    switch (c) {
      case 0xC6: case 0xE6: return "ae";
      case 0xDE: case 0xFE: return "th";
      case 0xDF: return "ss";
      default: break;
    }
    const auto base = kLatin1.substr(c - 0xC0, 1);
    return base == "?" ? std::string_view{} : base;
  }
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x152 || c == 0x153) return "oe";
    if (c == 0x132 || c == 0x133) return "ij";
    return kExtA.substr(c - 0x100, 1);
  }
  return {};
}

}  // namespace detail

/// Matching key for titles: decoded, case-folded, Latin diacritics reduced
/// to their base letters, one trailing "." dropped, every character that is
/// neither a word character nor whitespace removed, whitespace collapsed.
/// Idempotent.
inline std::string normalize_title(std::string_view title) {
  const auto folded = fold_case(decode_text(title));
  std::string_view body = trim(folded);
  if (!body.empty() && body.back() == '.') body.remove_suffix(1);
  std::string out;
  out.reserve(body.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < body.size();) {
    const auto cp = utf8::next(body, i);
    i += cp.length;
    if (!cp.valid) continue;
    if (is_space_code_point(cp.value)) {
      pending_space = !out.empty();
      continue;
    }
    if (!is_word_code_point(cp.value)) continue;
    if (pending_space) out.push_back(' ');
    pending_space = false;
    if (const auto base = detail::latin_base(cp.value); !base.empty()) {
      out.append(base);
    } else {
      utf8::append(out, cp.value);
    }
  }
  return out;
}

/// Display form of a title: decoded, whitespace collapsed, one trailing
/// "." dropped.
inline std::string display_title(std::string_view title) {
  auto s = collapse_whitespace(decode_text(trim(title)));
  if (!s.empty() && s.back() == '.') s.pop_back();
  return std::string(trim(s));
}

}  // namespace bibcorpus
