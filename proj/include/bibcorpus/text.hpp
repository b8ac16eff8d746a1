#pragma once

// UTF-8 helpers, case folding and entity / escape decoding shared by the
// parsers, the store and the keyword pipeline.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bibcorpus {

namespace utf8 {

struct CodePoint {
  char32_t value = 0;
  std::size_t length = 1;
  bool valid = true;
};

// Decodes one code point at `pos`. Invalid sequences yield the raw byte
// with valid == false so callers can copy it through unchanged.
inline CodePoint next(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1, true};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {b0, 1, false};
  }
  if (pos + len > s.size()) return {b0, 1, false};
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return {b0, 1, false};
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong forms and surrogates are rejected.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
      (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) ||
      (cp >= 0xD800 && cp <= 0xDFFF)) {
    return {b0, 1, false};
  }
  return {cp, len, true};
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline bool encodable(char32_t cp) {
  return cp != 0 && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
}

}  // namespace utf8

// Simple lowercase mapping for ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic. Everything else maps to itself.
inline char32_t fold_code_point(char32_t c) {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 32 : c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x130) return 'i';
    if (c == 0x178) return 0xFF;
    if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) {
      return (c % 2 == 1) ? c + 1 : c;
    }
    if (c == 0x131 || c == 0x138 || c == 0x149 || c == 0x17F) return c;
    return (c % 2 == 0) ? c + 1 : c;
  }
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  return c;
}

inline std::string fold_case(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto cp = utf8::next(s, i);
    if (!cp.valid) {
      out.push_back(s[i]);
    } else if (cp.value < 0x80) {
      out.push_back(static_cast<char>(fold_code_point(cp.value)));
    } else {
      utf8::append(out, fold_code_point(cp.value));
    }
    i += cp.length;
  }
  return out;
}

inline bool is_space_code_point(char32_t c) {
  switch (c) {
    case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
    case 0xA0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

// Letters and digits outside ASCII that count as word characters.
inline bool is_word_code_point(char32_t c) {
  if (c < 0x80) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  }
  if (c == 0xAA || c == 0xB5 || c == 0xBA) return true;
  if (c >= 0xC0 && c <= 0x2AF) return c != 0xD7 && c != 0xF7;
  if (c >= 0x370 && c <= 0x3FF) return c != 0x37E && c != 0x387 && c != 0x375;
  if (c >= 0x400 && c <= 0x52F) return !(c >= 0x482 && c <= 0x489);
  if (c >= 0x5D0 && c <= 0x5EA) return true;
  if (c >= 0x620 && c <= 0x64A) return true;
  if (c >= 0x660 && c <= 0x669) return true;
  if (c >= 0x1E00 && c <= 0x1EFF) return true;
  if (c >= 0x3040 && c <= 0x30FF) return c != 0x30FB;
  if (c >= 0x3400 && c <= 0x4DBF) return true;
  if (c >= 0x4E00 && c <= 0x9FFF) return true;
  if (c >= 0xAC00 && c <= 0xD7AF) return true;
  return false;
}

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (std::size_t i = 0; i < s.size();) {
    const auto cp = utf8::next(s, i);
    if (cp.valid && is_space_code_point(cp.value)) {
      pending = !out.empty();
    } else {
      if (pending) out.push_back(' ');
      pending = false;
      out.append(s.substr(i, cp.length));
    }
    i += cp.length;
  }
  return out;
}

// HTML 4 named character references.
inline std::optional<char32_t> lookup_entity(std::string_view name) {
  static constexpr std::array<std::pair<std::string_view, char32_t>, 253> kTable{{
      {"AElig", 198}, {"Aacute", 193}, {"Acirc", 194}, {"Agrave", 192},
      {"Alpha", 913}, {"Aring", 197}, {"Atilde", 195}, {"Auml", 196},
      {"Beta", 914}, {"Ccedil", 199}, {"Chi", 935}, {"Dagger", 8225},
      {"Delta", 916}, {"ETH", 208}, {"Eacute", 201}, {"Ecirc", 202},
      {"Egrave", 200}, {"Epsilon", 917}, {"Eta", 919}, {"Euml", 203},
      {"Gamma", 915}, {"Iacute", 205}, {"Icirc", 206}, {"Igrave", 204},
      {"Iota", 921}, {"Iuml", 207}, {"Kappa", 922}, {"Lambda", 923},
      {"Mu", 924}, {"Ntilde", 209}, {"Nu", 925}, {"OElig", 338},
      {"Oacute", 211}, {"Ocirc", 212}, {"Ograve", 210}, {"Omega", 937},
      {"Omicron", 927}, {"Oslash", 216}, {"Otilde", 213}, {"Ouml", 214},
      {"Phi", 934}, {"Pi", 928}, {"Prime", 8243}, {"Psi", 936},
      {"Rho", 929}, {"Scaron", 352}, {"Sigma", 931}, {"THORN", 222},
      {"Tau", 932}, {"Theta", 920}, {"Uacute", 218}, {"Ucirc", 219},
      {"Ugrave", 217}, {"Upsilon", 933}, {"Uuml", 220}, {"Xi", 926},
      {"Yacute", 221}, {"Yuml", 376}, {"Zeta", 918}, {"aacute", 225},
      {"acirc", 226}, {"acute", 180}, {"aelig", 230}, {"agrave", 224},
      {"alefsym", 8501}, {"alpha", 945}, {"amp", 38}, {"and", 8743},
      {"ang", 8736}, {"apos", 39}, {"aring", 229}, {"asymp", 8776},
      {"atilde", 227}, {"auml", 228}, {"bdquo", 8222}, {"beta", 946},
      {"brvbar", 166}, {"bull", 8226}, {"cap", 8745}, {"ccedil", 231},
      {"cedil", 184}, {"cent", 162}, {"chi", 967}, {"circ", 710},
      {"clubs", 9827}, {"cong", 8773}, {"copy", 169}, {"crarr", 8629},
      {"cup", 8746}, {"curren", 164}, {"dArr", 8659}, {"dagger", 8224},
      {"darr", 8595}, {"deg", 176}, {"delta", 948}, {"diams", 9830},
      {"divide", 247}, {"eacute", 233}, {"ecirc", 234}, {"egrave", 232},
      {"empty", 8709}, {"emsp", 8195}, {"ensp", 8194}, {"epsilon", 949},
      {"equiv", 8801}, {"eta", 951}, {"eth", 240}, {"euml", 235},
      {"euro", 8364}, {"exist", 8707}, {"fnof", 402}, {"forall", 8704},
      {"frac12", 189}, {"frac14", 188}, {"frac34", 190}, {"frasl", 8260},
      {"gamma", 947}, {"ge", 8805}, {"gt", 62}, {"hArr", 8660},
      {"harr", 8596}, {"hearts", 9829}, {"hellip", 8230}, {"iacute", 237},
      {"icirc", 238}, {"iexcl", 161}, {"igrave", 236}, {"image", 8465},
      {"infin", 8734}, {"int", 8747}, {"iota", 953}, {"iquest", 191},
      {"isin", 8712}, {"iuml", 239}, {"kappa", 954}, {"lArr", 8656},
      {"lambda", 955}, {"lang", 9001}, {"laquo", 171}, {"larr", 8592},
      {"lceil", 8968}, {"ldquo", 8220}, {"le", 8804}, {"lfloor", 8970},
      {"lowast", 8727}, {"loz", 9674}, {"lrm", 8206}, {"lsaquo", 8249},
      {"lsquo", 8216}, {"lt", 60}, {"macr", 175}, {"mdash", 8212},
      {"micro", 181}, {"middot", 183}, {"minus", 8722}, {"mu", 956},
      {"nabla", 8711}, {"nbsp", 160}, {"ndash", 8211}, {"ne", 8800},
      {"ni", 8715}, {"not", 172}, {"notin", 8713}, {"nsub", 8836},
      {"ntilde", 241}, {"nu", 957}, {"oacute", 243}, {"ocirc", 244},
      {"oelig", 339}, {"ograve", 242}, {"oline", 8254}, {"omega", 969},
      {"omicron", 959}, {"oplus", 8853}, {"or", 8744}, {"ordf", 170},
      {"ordm", 186}, {"oslash", 248}, {"otilde", 245}, {"otimes", 8855},
      {"ouml", 246}, {"para", 182}, {"part", 8706}, {"permil", 8240},
      {"perp", 8869}, {"phi", 966}, {"pi", 960}, {"piv", 982},
      {"plusmn", 177}, {"pound", 163}, {"prime", 8242}, {"prod", 8719},
      {"prop", 8733}, {"psi", 968}, {"quot", 34}, {"rArr", 8658},
      {"radic", 8730}, {"rang", 9002}, {"raquo", 187}, {"rarr", 8594},
      {"rceil", 8969}, {"rdquo", 8221}, {"real", 8476}, {"reg", 174},
      {"rfloor", 8971}, {"rho", 961}, {"rlm", 8207}, {"rsaquo", 8250},
      {"rsquo", 8217}, {"sbquo", 8218}, {"scaron", 353}, {"sdot", 8901},
      {"sect", 167}, {"shy", 173}, {"sigma", 963}, {"sigmaf", 962},
      {"sim", 8764}, {"spades", 9824}, {"sub", 8834}, {"sube", 8838},
      {"sum", 8721}, {"sup", 8835}, {"sup1", 185}, {"sup2", 178},
      {"sup3", 179}, {"supe", 8839}, {"szlig", 223}, {"tau", 964},
      {"there4", 8756}, {"theta", 952}, {"thetasym", 977}, {"thinsp", 8201},
      {"thorn", 254}, {"tilde", 732}, {"times", 215}, {"trade", 8482},
      {"uArr", 8657}, {"uacute", 250}, {"uarr", 8593}, {"ucirc", 251},
      {"ugrave", 249}, {"uml", 168}, {"upsih", 978}, {"upsilon", 965},
      {"uuml", 252}, {"weierp", 8472}, {"xi", 958}, {"yacute", 253},
      {"yen", 165}, {"yuml", 255}, {"zeta", 950}, {"zwj", 8205},
      {"zwnj", 8204},
  }};
  static_assert(std::is_sorted(kTable.begin(), kTable.end(),
                               [](const auto& a, const auto& b) { return a.first < b.first; }));
  const auto it = std::lower_bound(
      kTable.begin(), kTable.end(), name,
      [](const auto& entry, std::string_view key) { return entry.first < key; });
  if (it == kTable.end() || it->first != name) return std::nullopt;
  return it->second;
}

namespace detail {

inline std::optional<unsigned> parse_hex4(std::string_view s, std::size_t pos) {
  if (pos + 4 > s.size()) return std::nullopt;
  unsigned v = 0;
  for (std::size_t i = pos; i < pos + 4; ++i) {
    const char c = s[i];
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') v |= static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') v |= static_cast<unsigned>(c - 'A' + 10);
    else return std::nullopt;
  }
  return v;
}

// Parses "&...;" starting at `pos`. Returns the code point and the length
// consumed, or nullopt when the reference is not decodable.
inline std::optional<std::pair<char32_t, std::size_t>> parse_reference(std::string_view s,
                                                                       std::size_t pos) {
  const auto semi = s.find(';', pos + 1);
  if (semi == std::string_view::npos || semi - pos > 32) return std::nullopt;
  const auto body = s.substr(pos + 1, semi - pos - 1);
  if (body.empty()) return std::nullopt;
  if (body[0] == '#') {
    std::uint64_t v = 0;
    std::size_t i = 1;
    int base = 10;
    if (body.size() > 1 && (body[1] == 'x' || body[1] == 'X')) {
      base = 16;
      i = 2;
    }
    if (i >= body.size()) return std::nullopt;
    for (; i < body.size(); ++i) {
      const char c = body[i];
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else return std::nullopt;
      v = v * static_cast<unsigned>(base) + static_cast<unsigned>(d);
      if (v > 0x10FFFF) return std::nullopt;
    }
    const auto cp = static_cast<char32_t>(v);
    if (!utf8::encodable(cp)) return std::nullopt;
    return std::pair{cp, body.size() + 2};
  }
  const auto cp = lookup_entity(body);
  if (!cp) return std::nullopt;
  return std::pair{*cp, body.size() + 2};
}

inline bool plausible_reference(std::string_view s, std::size_t pos) {
  const auto semi = s.find(';', pos + 1);
  if (semi == std::string_view::npos || semi == pos + 1 || semi - pos > 32) return false;
  for (std::size_t i = pos + 1; i < semi; ++i) {
    const char c = s[i];
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || (c == '#' && i == pos + 1);
    if (!ok) return false;
  }
  return true;
}

// One left-to-right decoding pass. Returns true when anything changed.
inline bool decode_pass(std::string_view in, std::string& out,
                        std::vector<std::string>* undecodable) {
  out.clear();
  out.reserve(in.size());
  bool changed = false;
  for (std::size_t i = 0; i < in.size();) {
    const char c = in[i];
    if (c == '&') {
      if (auto ref = parse_reference(in, i)) {
        utf8::append(out, ref->first);
        i += ref->second;
        changed = true;
        continue;
      }
      if (undecodable && plausible_reference(in, i)) {
        const auto semi = in.find(';', i + 1);
        undecodable->emplace_back(in.substr(i, semi - i + 1));
      }
    } else if (c == '\\' && i + 1 < in.size() && in[i + 1] == 'u') {
      if (auto hi = parse_hex4(in, i + 2)) {
        char32_t cp = *hi;
        std::size_t consumed = 6;
        bool ok = true;
        if (cp >= 0xD800 && cp <= 0xDBFF) {
          ok = false;
          if (i + 12 <= in.size() && in[i + 6] == '\\' && in[i + 7] == 'u') {
            if (auto lo = parse_hex4(in, i + 8); lo && *lo >= 0xDC00 && *lo <= 0xDFFF) {
              cp = 0x10000 + ((cp - 0xD800) << 10) + (*lo - 0xDC00);
              consumed = 12;
              ok = true;
            }
          }
        } else if (!utf8::encodable(cp)) {
          ok = false;
        }
        if (ok) {
          utf8::append(out, cp);
          i += consumed;
          changed = true;
          continue;
        }
        if (undecodable) undecodable->emplace_back(in.substr(i, 6));
      }
    }
    out.push_back(c);
    ++i;
  }
  return changed;
}

}  // namespace detail

/// Decodes HTML character references (named, decimal and hex) and `\uXXXX`
/// escapes, repeating until a fixed point so doubly-encoded text such as
/// "&amp;#246;" is fully decoded and decode_text(decode_text(x)) ==
/// decode_text(x). References that cannot be decoded are left verbatim and,
/// when `undecodable` is given, appended to it once per occurrence.
inline std::string decode_text(std::string_view text,
                               std::vector<std::string>* undecodable = nullptr) {
  if (text.find('&') == std::string_view::npos && text.find("\\u") == std::string_view::npos) {
    return std::string(text);
  }
  std::string current(text);
  std::string next;
  // Every successful replacement shortens the string, so this terminates.
  while (detail::decode_pass(current, next, nullptr)) current.swap(next);
  if (undecodable) detail::decode_pass(current, next, undecodable);
  return current;
}

}  // namespace bibcorpus
