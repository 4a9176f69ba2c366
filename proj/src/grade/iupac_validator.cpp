#include <httplib.h>

#include <fstream>
#include <json.hpp>
#include <mutex>
#include <set>

#include "chemiq/grade.hpp"

namespace chemiq {

MapIupacValidator::MapIupacValidator(std::map<std::string, std::string> entries)
    : entries_(std::move(entries)) {}

std::optional<std::string> MapIupacValidator::to_structure(const std::string& name) {
  const auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string url_encode(const std::string& s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    const bool plain = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                       (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' || c == '~';
    if (plain) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xf];
    }
  }
  return out;
}

}  // namespace

struct HttpIupacValidator::Impl {
  std::string origin;       // scheme://host[:port]
  std::string path_prefix;  // leading path, no trailing slash
  std::string cache_path;
  int timeout_s = 30;

  std::mutex mutex;
  std::map<std::string, std::string> hits;
  std::set<std::string> misses;

  void load_cache() {
    if (cache_path.empty()) return;
    std::ifstream in(cache_path);
    if (!in) return;  // first run: no cache yet
    try {
      nlohmann::json j;
      in >> j;
      for (const auto& [name, smiles] : j.at("hits").items())
        hits[name] = smiles.get<std::string>();
      for (const auto& name : j.at("misses")) misses.insert(name.get<std::string>());
    } catch (const std::exception&) {
      // unreadable cache is ignored, not fatal
    }
  }
};

HttpIupacValidator::HttpIupacValidator(std::string base_url, std::string cache_path,
                                       int timeout_s)
    : impl_(std::make_unique<Impl>()) {
  while (!base_url.empty() && base_url.back() == '/') base_url.pop_back();
  const size_t scheme = base_url.find("://");
  const size_t path = (scheme == std::string::npos)
                          ? base_url.find('/')
                          : base_url.find('/', scheme + 3);
  if (path == std::string::npos) {
    impl_->origin = base_url;
  } else {
    impl_->origin = base_url.substr(0, path);
    impl_->path_prefix = base_url.substr(path);
  }
  impl_->cache_path = std::move(cache_path);
  impl_->timeout_s = timeout_s;
  impl_->load_cache();
}

HttpIupacValidator::~HttpIupacValidator() = default;

std::optional<std::string> HttpIupacValidator::to_structure(const std::string& name) {
  {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    const auto hit = impl_->hits.find(name);
    if (hit != impl_->hits.end()) return hit->second;
    if (impl_->misses.count(name)) return std::nullopt;
  }

  httplib::Client client(impl_->origin);
  client.set_connection_timeout(impl_->timeout_s, 0);
  client.set_read_timeout(impl_->timeout_s, 0);
  client.set_follow_location(true);

  const std::string target = impl_->path_prefix + "/" + url_encode(name) + ".smi";
  const httplib::Result res = client.Get(target);
  if (!res) {
    throw ValidatorUnavailable("request to " + impl_->origin + " failed: " +
                               httplib::to_string(res.error()));
  }
  if (res->status == 200) {
    const std::string smiles = trim(res->body);
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->hits[name] = smiles;
    return smiles;
  }
  if (res->status == 404) {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->misses.insert(name);
    return std::nullopt;
  }
  throw ValidatorUnavailable("unexpected status " + std::to_string(res->status) +
                             " from " + impl_->origin);
}

void HttpIupacValidator::save_cache() const {
  if (impl_->cache_path.empty()) return;
  nlohmann::ordered_json j;
  j["schema"] = "chemiq-name-cache/1";
  std::lock_guard<std::mutex> lock(impl_->mutex);
  j["hits"] = impl_->hits;
  j["misses"] = impl_->misses;
  write_text_file(impl_->cache_path, j.dump(2) + "\n");
}

}  // namespace chemiq
