#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eds::sym {

enum class SymbolKind : uint8_t {
  BaseVar,
  Jet,
  FibreJet,
  Parameter,
  Invariant,
  Unknown,
};

using SymbolId = uint32_t;
inline constexpr SymbolId kNoSymbol = 0xffffffffu;

// Process-wide intern table. Interning the same name twice returns the same
// id; the kind is fixed at first creation and re-interning with a different
// kind throws. Creation is serialized; lookups after creation are lock-free
// for ids already seen by the calling thread's happens-before edge (all
// corpus symbols are created during sequential parsing).
SymbolId intern_symbol(const std::string& name, SymbolKind kind);

// Returns kNoSymbol when the name has never been interned.
SymbolId lookup_symbol(const std::string& name);

const std::string& symbol_name(SymbolId id);
SymbolKind symbol_kind(SymbolId id);
std::size_t symbol_count();

const char* symbol_kind_name(SymbolKind kind);

}  // namespace eds::sym
