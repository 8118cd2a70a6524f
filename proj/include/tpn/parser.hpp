#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpn/net.hpp"
#include "tpn/product.hpp"

namespace tpn {

struct ParseError : std::runtime_error {
  enum class Kind {
    Syntax,
    DuplicateName,
    UnknownReference,
    EmptyInterval,
    NegativeTokens,
    InvalidSync,
    MissingComponent,
  };
  Kind kind;
  std::size_t line;  // 1-based; 0 when no position applies
  std::size_t col;
  std::string detail;  // message without the file/location prefix
  std::string file;    // set when rethrown by the file loaders
  ParseError(Kind k, std::size_t ln, std::size_t c, const std::string& msg,
             const std::string& from = "")
      : std::runtime_error((from.empty() ? "" : from + ": ") +
                           (ln ? "line " + std::to_string(ln) + ", col " + std::to_string(c) +
                                     ": "
                               : "") +
                           msg),
        kind(k),
        line(ln),
        col(c),
        detail(msg),
        file(from) {}
};

// Net text format, one directive per line, '#' starts a comment:
//   net <name>
//   pl <place> (<tokens>)
//   tr <name> [: <label>] [<interval>] <in>[*<weight>] ... -> <out>[*<weight>] ...
//   sync <t1> [<t2> ...]
// Intervals: [a,b] ]a,b] [a,b[ ]a,b[ with non-negative integer or p/q
// endpoints; an infinite upper endpoint is written w and must be open
// ("...,w["). A transition without an interval gets [0,w[. Without sync lines
// the relation is the singleton lift; with them it is exactly the declared
// sets. Names must be declared before use.
Ptpn parse_net(const std::string& text);
std::string serialize_net(const Ptpn& p);

Ptpn load_net_file(const std::filesystem::path& path);

// Composition manifest, same lexical rules:
//   component <path>
//   sync-labels [<label> ...]
// Components are composed left to right; a sync-labels line overrides the
// policy of the step that adds the most recent component (default: alphabet
// intersection). Paths are resolved against the manifest's directory.
struct ManifestEntry {
  std::string path;
  SyncPolicy policy;  // policy of the step that adds this component
};

struct Manifest {
  std::filesystem::path base_dir;
  std::vector<ManifestEntry> entries;
};

Manifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir = ".");
Manifest load_manifest_file(const std::filesystem::path& path);
std::string serialize_manifest(const Manifest& m);

// Loads every component net referenced by the manifest, in order.
std::vector<Ptpn> load_components(const Manifest& m);

bool valid_name(std::string_view s);

}  // namespace tpn
