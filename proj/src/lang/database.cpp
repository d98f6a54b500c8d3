#include "swp/lang/database.hpp"

#include "swp/error.hpp"

namespace swp {

void Database::declare(const std::string& pred, std::size_t arity) {
  auto [it, inserted] = rels_.try_emplace(pred);
  if (inserted) {
    it->second.arity = arity;
  } else if (it->second.arity != arity) {
    throw ValidationError("arity mismatch for " + pred + ": " + std::to_string(it->second.arity) + " vs " +
                          std::to_string(arity));
  }
}

bool Database::insert(const std::string& pred, const Tuple& t) {
  declare(pred, t.size());
  return rels_[pred].tuples.insert(t).second;
}

bool Database::erase(const std::string& pred, const Tuple& t) {
  auto it = rels_.find(pred);
  return it != rels_.end() && it->second.tuples.erase(t) > 0;
}

bool Database::contains(const std::string& pred, const Tuple& t) const {
  auto it = rels_.find(pred);
  return it != rels_.end() && it->second.tuples.count(t) > 0;
}

const std::set<Tuple>& Database::relation(const std::string& pred) const {
  static const std::set<Tuple> empty;
  auto it = rels_.find(pred);
  return it == rels_.end() ? empty : it->second.tuples;
}

std::optional<std::size_t> Database::arity(const std::string& pred) const {
  auto it = rels_.find(pred);
  if (it == rels_.end()) return std::nullopt;
  return it->second.arity;
}

std::vector<std::string> Database::predicates() const {
  std::vector<std::string> out;
  for (const auto& [p, r] : rels_) out.push_back(p);
  return out;
}

std::set<std::string> Database::active_domain() const {
  std::set<std::string> out;
  for (const auto& [p, r] : rels_)
    for (const auto& t : r.tuples) out.insert(t.begin(), t.end());
  return out;
}

std::size_t Database::fact_count() const {
  std::size_t n = 0;
  for (const auto& [p, r] : rels_) n += r.tuples.size();
  return n;
}

std::string to_string(const Database& db) {
  std::string out;
  for (const auto& p : db.predicates()) {
    for (const auto& t : db.relation(p)) {
      out += p;
      if (!t.empty()) {
        out += "(";
        for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + t[i];
        out += ")";
      }
      out += ".\n";
    }
  }
  return out;
}

}  // namespace swp
