#include "reorder/fetch.hpp"

#include <zlib.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <thread>

#if defined(REORDER_HAVE_TLS)
#include "httplib.h"
#endif

namespace reorder {

namespace fs = std::filesystem;

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("REORDER_ADVISOR_CACHE"); env && *env)
    return fs::path(env);
  if (const char* home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".cache" / "reorder-advisor";
  return fs::path(".reorder-advisor-cache");
}

namespace detail {

std::string gunzip(const std::string& compressed) {
  z_stream zs{};
  // 15+32: accept gzip or zlib headers
  if (inflateInit2(&zs, 15 + 32) != Z_OK)
    throw CorruptArchive("zlib initialization failed");

  std::string out;
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  char buf[1 << 16];
  int rc = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof(buf);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw CorruptArchive("archive is not valid gzip data (zlib error " +
                           std::to_string(rc) + ")");
    }
    out.append(buf, sizeof(buf) - zs.avail_out);
  } while (rc != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) throw CorruptArchive("gzip stream is truncated");
  return out;
}

std::string extract_tar_member(const std::string& tar, const std::string& suffix) {
  std::size_t off = 0;
  while (off + 512 <= tar.size()) {
    const char* header = tar.data() + off;
    // end of archive: a zero block
    bool all_zero = true;
    for (int i = 0; i < 512 && all_zero; ++i) all_zero = header[i] == '\0';
    if (all_zero) break;

    std::string name(header, strnlen(header, 100));
    const std::string prefix(header + 345, strnlen(header + 345, 155));
    if (!prefix.empty()) name = prefix + "/" + name;

    char size_field[13] = {};
    std::memcpy(size_field, header + 124, 12);
    const std::size_t size = static_cast<std::size_t>(strtoll(size_field, nullptr, 8));
    const char typeflag = header[156];

    const std::size_t data_off = off + 512;
    if (data_off + size > tar.size())
      throw CorruptArchive("tar member '" + name + "' is truncated");
    if ((typeflag == '0' || typeflag == '\0') && name.size() >= suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
      return tar.substr(data_off, size);

    off = data_off + (size + 511) / 512 * 512;
  }
  throw CorruptArchive("archive contains no '" + suffix + "' member");
}

}  // namespace detail

namespace {

std::string https_download(const std::string& url) {
#if defined(REORDER_HAVE_TLS)
  // split scheme://host/path
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw FetchError("malformed URL '" + url + "'");
  const std::size_t host_begin = scheme_end + 3;
  const std::size_t path_begin = url.find('/', host_begin);
  const std::string origin = url.substr(0, path_begin);
  const std::string path = path_begin == std::string::npos ? "/" : url.substr(path_begin);

  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(30);
  client.set_read_timeout(120);
  httplib::Result res = client.Get(path);
  if (!res)
    throw FetchError("download failed for " + url + ": " +
                     httplib::to_string(res.error()));
  if (res->status != 200)
    throw FetchError("download failed for " + url + ": HTTP " +
                     std::to_string(res->status));
  return res->body;
#else
  throw FetchError("this build has no TLS support; cannot download " + url);
#endif
}

/// Advisory lock file; blocks until acquired or the wait budget runs out.
class CacheLock {
 public:
  explicit CacheLock(fs::path path) : path_(std::move(path)) {
    using namespace std::chrono_literals;
    const auto deadline = std::chrono::steady_clock::now() + 120s;
    for (;;) {
      std::error_code ec;
      fs::create_directories(path_.parent_path(), ec);
      FILE* f = std::fopen(path_.c_str(), "wx");
      if (f) {
        std::fclose(f);
        return;
      }
      if (std::chrono::steady_clock::now() > deadline)
        throw FetchError("timed out waiting for lock file " + path_.string());
      std::this_thread::sleep_for(50ms);
    }
  }
  ~CacheLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;

 private:
  fs::path path_;
};

}  // namespace

fs::path fetch_collection_matrix(const std::string& group, const std::string& name,
                                 const FetchOptions& options) {
  const fs::path cache =
      options.cache_dir.empty() ? default_cache_dir() : options.cache_dir;
  const fs::path target = cache / group / (name + ".mtx");
  if (fs::exists(target)) return target;

  const CacheLock lock(cache / group / ("." + name + ".lock"));
  if (fs::exists(target)) return target;  // a concurrent fetch won the race

  const std::string url = options.base_url + "/" + group + "/" + name + ".tar.gz";
  const std::string archive =
      options.downloader ? options.downloader(url) : https_download(url);

  const std::string mtx = detail::extract_tar_member(detail::gunzip(archive), ".mtx");

  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw FetchError("cannot write " + tmp.string());
    out.write(mtx.data(), static_cast<std::streamsize>(mtx.size()));
    if (!out) throw FetchError("failed writing " + tmp.string());
  }
  fs::rename(tmp, target);
  return target;
}

}  // namespace reorder
