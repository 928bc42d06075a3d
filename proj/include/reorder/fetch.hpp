#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "reorder/errors.hpp"

namespace reorder {

/// Returns the response body for a URL or throws FetchError.
using Downloader = std::function<std::string(const std::string& url)>;

struct FetchOptions {
  std::filesystem::path cache_dir;  // empty = default_cache_dir()
  std::string base_url = "https://sparse.tamu.edu/MM";
  Downloader downloader;            // empty = HTTPS download
};

/// REORDER_ADVISOR_CACHE when set, otherwise ~/.cache/reorder-advisor.
std::filesystem::path default_cache_dir();

/// Downloads <base_url>/<group>/<name>.tar.gz, extracts the .mtx member into
/// <cache>/<group>/<name>.mtx and returns that path. A cache hit skips the
/// network entirely; concurrent fetches of the same matrix serialize on an
/// advisory lock file.
std::filesystem::path fetch_collection_matrix(const std::string& group,
                                              const std::string& name,
                                              const FetchOptions& options = {});

namespace detail {

/// zlib inflate of a gzip stream (CorruptArchive on failure).
std::string gunzip(const std::string& compressed);

/// Extracts the first member whose name ends in suffix from a ustar archive.
std::string extract_tar_member(const std::string& tar, const std::string& suffix);

}  // namespace detail

}  // namespace reorder
