#pragma once

#include <string>
#include <string_view>

namespace elastic {

/// Hex SHA-1 of "blob <size>\0<content>", i.e. what `git hash-object` prints.
std::string git_blob_sha1(std::string_view content);

}  // namespace elastic
