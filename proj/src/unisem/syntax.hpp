#pragma once

#include <map>
#include <string>
#include <string_view>

#include "unisem/wirings.hpp"

namespace unisem {

// Text syntax shared by every file format:
//   variables     [A-Z][A-Za-z0-9_]*   except the reserved names L R M A A0
//   symbols       [a-z0-9][A-Za-z0-9_]*  and the reserved names above
//   star          #
//   bullet        infix *, right-associating: a*b*c = a*(b*c)
//   application   f(t1,...,tn)
//   flow          HEAD <- BODY            (one per line)
//   comment       % to end of line; `% key: value` lines are headers

Term parse_term(std::string_view text, SymbolTable& symbols);
Flow parse_flow(std::string_view text, SymbolTable& symbols);

struct ParsedWiring {
  Wiring wiring;
  std::map<std::string, std::string> headers;
};

/// Throws Error(Parse) with line/column, or Error(UnsafeFlow) naming the
/// offending variable as written.
ParsedWiring parse_wiring(std::string_view text, SymbolTable& symbols);

/// Renders `% key: value` header lines followed by the flows.
std::string format_wiring(const Wiring& w, const std::map<std::string, std::string>& headers = {});

}  // namespace unisem
