// Error codes and the exception type shared by all protnn components.

#ifndef PROTNN_ERROR_HPP_
#define PROTNN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace protnn {

enum class errc {
  file_not_found,
  malformed_record,
  no_ca_atoms,
  missing_column,
  duplicate_path,
  empty_manifest,
  empty_structure,
  empty_graph,
  eigensolver_failure,
  all_structures_failed,
  duplicate_structure_id,
  dimension_mismatch,
  missing_variances,
  empty_db,
  invalid_mask,
  too_few_rows,
  bad_format,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace protnn

#endif
