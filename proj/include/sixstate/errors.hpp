#pragma once

#include <stdexcept>
#include <string>

namespace sixstate {

// One error class for everything data-shaped; the kind tag keeps the
// distinct failure modes testable without a class per condition.
class DataError : public std::runtime_error {
 public:
  enum class Kind {
    NoData,            // empty record or row list
    MissingFile,       // input path does not exist / cannot be opened
    MalformedHeader,   // CSV header does not match the schema
    MalformedRow,      // wrong field count or unparsable field
    NonBinaryDetector, // pd0/pd1 outside {0, 1}
    UnknownLabel,      // config label outside the table
    UnresolvedLabel,   // label maps to no named state / basis
    DuplicateLabel,    // config table repeats a label
  };

  DataError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace sixstate
