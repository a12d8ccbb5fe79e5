#include "symkernel/symbol.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

#include "symkernel/errors.hpp"

namespace eds::sym {

namespace {

struct Entry {
  std::string name;
  SymbolKind kind;
};

struct Table {
  std::mutex mu;
  std::deque<Entry> entries;
  std::unordered_map<std::string, SymbolId> by_name;
};

Table& table() {
  static Table t;
  return t;
}

}  // namespace

SymbolId intern_symbol(const std::string& name, SymbolKind kind) {
  if (name.empty()) throw UnknownSymbolError("cannot intern an empty symbol name");
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.by_name.find(name);
  if (it != t.by_name.end()) {
    const Entry& e = t.entries[it->second];
    if (e.kind != kind) {
      throw UnknownSymbolError("symbol '" + name + "' already interned as kind " +
                               symbol_kind_name(e.kind) + ", re-interned as " +
                               symbol_kind_name(kind));
    }
    return it->second;
  }
  SymbolId id = static_cast<SymbolId>(t.entries.size());
  t.entries.push_back(Entry{name, kind});
  t.by_name.emplace(name, id);
  return id;
}

SymbolId lookup_symbol(const std::string& name) {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.by_name.find(name);
  return it == t.by_name.end() ? kNoSymbol : it->second;
}

const std::string& symbol_name(SymbolId id) {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  if (id >= t.entries.size()) throw UnknownSymbolError("symbol id out of range");
  return t.entries[id].name;
}

SymbolKind symbol_kind(SymbolId id) {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  if (id >= t.entries.size()) throw UnknownSymbolError("symbol id out of range");
  return t.entries[id].kind;
}

std::size_t symbol_count() {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.entries.size();
}

const char* symbol_kind_name(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::BaseVar: return "base";
    case SymbolKind::Jet: return "jet";
    case SymbolKind::FibreJet: return "fibre-jet";
    case SymbolKind::Parameter: return "parameter";
    case SymbolKind::Invariant: return "invariant";
    case SymbolKind::Unknown: return "unknown";
  }
  return "?";
}

}  // namespace eds::sym
