#include "rcpkit/manifest.hpp"

#include "rcpkit/error.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

namespace rcpkit {

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    fail(ErrorKind::numeric_failure, "sha256: digest computation failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j = extra;
  j["subcommand"] = subcommand;
  j["arguments"] = arguments;
  j["seeds"] = seeds;
  j["version"] = version;
  j["digest_algorithm"] = digest_algorithm;
  nlohmann::json outs = nlohmann::json::array();
  for (const OutputFile& f : outputs) outs.push_back({{"file", f.name}, {"sha256", f.digest}});
  j["outputs"] = outs;
  return j;
}

void OutputStage::add(std::string name, std::string content) {
  require(!name.empty() && name.find('/') == std::string::npos, "output names must be plain file names");
  files_.emplace_back(std::move(name), std::move(content));
}

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::invalid_argument, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorKind::invalid_argument, "write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::vector<std::string> OutputStage::commit(RunManifest manifest, const std::string& manifest_name) {
  const std::filesystem::path dir(dir_);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::invalid_argument, "cannot create output directory " + dir_ + ": " + ec.message());
  manifest.outputs.clear();
  for (const auto& [name, content] : files_) manifest.outputs.push_back({name, sha256_hex(content)});
  std::vector<std::string> written;
  for (const auto& [name, content] : files_) {
    write_atomic(dir / name, content);
    written.push_back((dir / name).string());
  }
  write_atomic(dir / manifest_name, manifest.to_json().dump(2) + "\n");
  written.push_back((dir / manifest_name).string());
  return written;
}

}  // namespace rcpkit
