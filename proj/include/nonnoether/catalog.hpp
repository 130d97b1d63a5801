#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nonnoether/system_spec.hpp"

namespace nonnoether {

struct CatalogEntry {
  std::string_view name;
  std::string_view summary;
  std::string_view source;  ///< system document in the TOML subset
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_catalog_entry(std::string_view name);
/// Throws SpecFormatError for unknown names.
SystemSpecDocument catalog_document(std::string_view name);

}  // namespace nonnoether
