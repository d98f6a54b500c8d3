#pragma once

#include <memory>
#include <vector>

#include "swp/datalog/program.hpp"
#include "swp/lang/database.hpp"
#include "swp/lang/update.hpp"
#include "swp/oracle/structure.hpp"

namespace swp {

// Update compiled against a signature; runs on all lanes at once.
// Qualifications and conditions are evaluated on the pre-state of the
// statement, with foreach variables ranging over its active domain plus the
// qualification's constants.
class CompiledUpdate {
 public:
  CompiledUpdate(const Update& u, const Signature& sig);
  void apply(Lanes& w) const;

  struct Step;

 private:
  std::shared_ptr<const Step> root_;
  const Signature* sig_;
};

Database exec_update(const Update& u, const Database& b);

// Execution against a rule base: qualifications and conditions are read in
// the model of p over the current state, writes go to the stored facts.
// Deleting from an IDB relation throws UnsupportedError.
Database exec_update_deductive(const Update& u, const DatalogProgram& p, const Database& b);

}  // namespace swp
