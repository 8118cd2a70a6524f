#pragma once

#include <filesystem>
#include <vector>

#include "tpn/analysis.hpp"
#include "tpn/parser.hpp"
#include "tpn/product.hpp"

namespace tpn {

// Parametric supply chain: one factory sends supply orders to `suppliers`
// independent suppliers; a pool of `managers` handles modification requests,
// each taking between 2 and `grant_upper` days; deliveries are validated and
// the closing synchronisation is observed by an end-of-line watchdog that
// raises TIMEOUT once `deadline` days pass without it. With `staggered`, the
// second supplier's order is delayed into [50,100] instead of [0,1].
struct ChainConfig {
  unsigned suppliers = 2;
  std::uint32_t managers = 1;
  Rat grant_upper = Rat(175);
  bool staggered = false;
  Rat deadline = Rat(210);
};

Ptpn gen_supplier(unsigned index);
Ptpn gen_manager(const ChainConfig& cfg);
Ptpn gen_factory(const ChainConfig& cfg);
Ptpn gen_end_of_line(const ChainConfig& cfg);

// Composition order: manager, factory, suppliers, end of line.
std::vector<Ptpn> chain_components(const ChainConfig& cfg);
ProductResult build_chain(const ChainConfig& cfg);

// The verdict contract shared by every chain: success and timeout labels plus
// the accepting marking (the watchdog reached its accepted place).
AcceptanceSpec chain_acceptance();

// Writes one .net file per component plus chain.manifest into `dir`.
void write_chain(const ChainConfig& cfg, const std::filesystem::path& dir);

}  // namespace tpn
