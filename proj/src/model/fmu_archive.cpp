#include "fmutest/model/fmu_archive.hpp"

#include <zlib.h>

#include <cstdint>

#include "fmutest/error.hpp"
#include "fmutest/io.hpp"

namespace fmutest::model {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;

std::uint32_t u16(std::string_view b, std::size_t off) {
  if (off + 2 > b.size()) throw Error(Errc::MalformedXml, "truncated ZIP archive");
  return static_cast<std::uint8_t>(b[off]) | (static_cast<std::uint8_t>(b[off + 1]) << 8);
}

std::uint32_t u32(std::string_view b, std::size_t off) {
  return u16(b, off) | (u16(b, off + 2) << 16);
}

std::string inflate_raw(std::string_view compressed, std::size_t expected) {
  std::string out(expected, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) {
    throw Error(Errc::MalformedXml, "zlib init failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const auto produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected) {
    throw Error(Errc::MalformedXml, "corrupt deflate stream in ZIP archive");
  }
  return out;
}

}  // namespace

bool looks_like_zip(std::string_view bytes) noexcept {
  return bytes.size() >= 4 && bytes[0] == 'P' && bytes[1] == 'K' && bytes[2] == 3 &&
         bytes[3] == 4;
}

std::optional<std::string> read_zip_member(std::string_view archive, std::string_view member) {
  if (!looks_like_zip(archive) || archive.size() < 22) {
    throw Error(Errc::MalformedXml, "not a ZIP archive");
  }
  std::size_t eocd = std::string_view::npos;
  for (std::size_t i = archive.size() - 22 + 1; i-- > 0;) {
    if (u32(archive, i) == kEndSig) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string_view::npos) throw Error(Errc::MalformedXml, "ZIP without directory");

  const std::uint32_t entries = u16(archive, eocd + 10);
  std::size_t off = u32(archive, eocd + 16);
  for (std::uint32_t i = 0; i < entries; ++i) {
    if (u32(archive, off) != kCentralSig) throw Error(Errc::MalformedXml, "bad ZIP directory");
    const std::uint32_t method = u16(archive, off + 10);
    const std::uint32_t crc_expected = u32(archive, off + 16);
    const std::uint32_t csize = u32(archive, off + 20);
    const std::uint32_t usize = u32(archive, off + 24);
    const std::uint32_t name_len = u16(archive, off + 28);
    const std::uint32_t extra_len = u16(archive, off + 30);
    const std::uint32_t comment_len = u16(archive, off + 32);
    const std::uint32_t local = u32(archive, off + 42);
    if (off + 46 + name_len > archive.size()) throw Error(Errc::MalformedXml, "bad ZIP entry");
    const std::string_view name = archive.substr(off + 46, name_len);
    off += 46 + name_len + extra_len + comment_len;
    if (name != member) continue;

    if (u32(archive, local) != kLocalHeaderSig) {
      throw Error(Errc::MalformedXml, "bad ZIP local header");
    }
    const std::size_t data = local + 30 + u16(archive, local + 26) + u16(archive, local + 28);
    if (data + csize > archive.size()) throw Error(Errc::MalformedXml, "truncated ZIP member");
    const std::string_view payload = archive.substr(data, csize);
    std::string bytes;
    if (method == 0) {
      bytes.assign(payload);
    } else if (method == 8) {
      bytes = inflate_raw(payload, usize);
    } else {
      throw Error(Errc::MalformedXml, "unsupported ZIP compression method " +
                                          std::to_string(method));
    }
    const auto crc = crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
                           static_cast<uInt>(bytes.size()));
    if (crc != crc_expected) {
      throw Error(Errc::MalformedXml, "CRC mismatch in ZIP member " + std::string(member));
    }
    return bytes;
  }
  return std::nullopt;
}

std::string load_model_description_bytes(const std::filesystem::path& path) {
  std::string bytes = read_file(path);
  if (!looks_like_zip(bytes)) return bytes;
  auto xml = read_zip_member(bytes, "modelDescription.xml");
  if (!xml) throw Error(Errc::MissingVariables, path.string() + " has no modelDescription.xml");
  return std::move(*xml);
}

}  // namespace fmutest::model
