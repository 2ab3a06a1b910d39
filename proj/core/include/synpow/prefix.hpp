#pragma once

#include <cstdint>
#include <string>

namespace synpow {

std::uint32_t parse_ipv4(const std::string& dotted);  // throws std::invalid_argument
std::string format_ipv4(std::uint32_t addr);

// IPv4 CIDR prefix held in canonical form (host bits cleared).
struct Ipv4Prefix {
  std::uint32_t addr = 0;
  std::uint8_t length = 0;

  Ipv4Prefix() = default;
  Ipv4Prefix(std::uint32_t a, std::uint8_t len);

  static Ipv4Prefix parse(const std::string& cidr);  // "10.2.0.0/16"

  std::uint32_t mask() const {
    return length == 0 ? 0u : ~std::uint32_t{0} << (32u - length);
  }
  bool contains(std::uint32_t ip) const { return (ip & mask()) == addr; }
  std::string str() const;

  friend bool operator==(const Ipv4Prefix&, const Ipv4Prefix&) = default;
};

struct Ipv4PrefixLess {
  bool operator()(const Ipv4Prefix& a, const Ipv4Prefix& b) const {
    if (a.addr != b.addr) return a.addr < b.addr;
    return a.length < b.length;
  }
};

}  // namespace synpow
