#include "synpow/prefix.hpp"

#include <charconv>
#include <stdexcept>

namespace synpow {

namespace {

std::uint32_t parse_decimal(std::string_view text, std::uint32_t max_value,
                            const std::string& what) {
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value > max_value ||
      text.empty()) {
    throw std::invalid_argument("bad " + what + ": '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::uint32_t parse_ipv4(const std::string& dotted) {
  std::uint32_t addr = 0;
  std::string_view rest = dotted;
  for (int octet = 0; octet < 4; ++octet) {
    const std::size_t dot = rest.find('.');
    const bool last = octet == 3;
    if (last != (dot == std::string_view::npos)) {
      throw std::invalid_argument("bad ipv4 address: '" + dotted + "'");
    }
    const std::string_view part = last ? rest : rest.substr(0, dot);
    addr = (addr << 8) | parse_decimal(part, 255, "ipv4 octet");
    if (!last) rest.remove_prefix(dot + 1);
  }
  return addr;
}

std::string format_ipv4(std::uint32_t addr) {
  std::string out;
  for (int shift = 24; shift >= 0; shift -= 8) {
    out += std::to_string((addr >> shift) & 0xffu);
    if (shift != 0) out += '.';
  }
  return out;
}

Ipv4Prefix::Ipv4Prefix(std::uint32_t a, std::uint8_t len) : length(len) {
  if (len > 32) {
    throw std::invalid_argument("prefix length " + std::to_string(len) + " > 32");
  }
  addr = a & (len == 0 ? 0u : ~std::uint32_t{0} << (32u - len));
}

Ipv4Prefix Ipv4Prefix::parse(const std::string& cidr) {
  const std::size_t slash = cidr.find('/');
  if (slash == std::string::npos) {
    throw std::invalid_argument("missing '/' in prefix: '" + cidr + "'");
  }
  const std::uint32_t addr = parse_ipv4(cidr.substr(0, slash));
  const std::uint32_t len =
      parse_decimal(std::string_view(cidr).substr(slash + 1), 32, "prefix length");
  return Ipv4Prefix(addr, static_cast<std::uint8_t>(len));
}

std::string Ipv4Prefix::str() const {
  return format_ipv4(addr) + "/" + std::to_string(length);
}

}  // namespace synpow
