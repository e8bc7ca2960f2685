#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "puzzletext/error.hpp"

namespace puzzletext::io {

class FileError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::filesystem::path& path);

// Writes to a temporary sibling and renames it into place, so `path` is
// either untouched or complete.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace puzzletext::io
