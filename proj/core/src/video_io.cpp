// Copyright 2026 The simrefine Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "simrefine/video_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "simrefine/binary_io.hpp"
#include "simrefine/error.hpp"
#include "simrefine/keyvalue.hpp"

namespace simrefine {

namespace {

constexpr char kRawMagic[8] = {'S', 'R', 'V', 'O', 'L', '0', '0', '1'};

unsigned char ToByte(double v) {
  return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

// Reads the next header token of a PGM file, skipping comments.
bool NextToken(std::istream& in, std::string& tok) {
  tok.clear();
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return true;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return !tok.empty();
}

}  // namespace

std::string PgmFrameName(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%04d.pgm", index);
  return buf;
}

void WritePgm(const std::filesystem::path& path, int height, int width,
              std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(height) * width) {
    throw ShapeError("PGM pixel count does not match " + std::to_string(height) + "x" +
                     std::to_string(width));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << width << ' ' << height << "\n255\n";
  std::vector<unsigned char> bytes(values.size());
  std::transform(values.begin(), values.end(), bytes.begin(), ToByte);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

PgmImage ReadPgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open " + path.string());
  std::string magic, w, h, maxval;
  if (!NextToken(in, magic) || magic != "P5") {
    throw IngestionError(path.string() + ": not a binary PGM (P5)");
  }
  if (!NextToken(in, w) || !NextToken(in, h) || !NextToken(in, maxval)) {
    throw IngestionError(path.string() + ": truncated PGM header");
  }
  PgmImage img;
  long max = 0;
  try {
    img.width = static_cast<int>(ParseInt(w, path.string()));
    img.height = static_cast<int>(ParseInt(h, path.string()));
    max = ParseInt(maxval, path.string());
  } catch (const ConfigError&) {
    throw IngestionError(path.string() + ": malformed PGM header");
  }
  if (img.width <= 0 || img.height <= 0 || max <= 0 || max > 255) {
    throw IngestionError(path.string() + ": unsupported PGM dimensions or depth");
  }
  std::vector<unsigned char> bytes(static_cast<std::size_t>(img.width) * img.height);
  if (!in.read(reinterpret_cast<char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()))) {
    throw IngestionError(path.string() + ": truncated PGM data");
  }
  img.pixels.resize(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    img.pixels[i] = std::min(1.0, bytes[i] / static_cast<double>(max));
  }
  return img;
}

void WritePgmSequence(const VideoVolume& video, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& v = video.frames;
  for (int t = 0; t < v.frames(); ++t) {
    WritePgm(dir / PgmFrameName(t), v.height(), v.width(), v.frame(t));
  }
  std::ofstream meta(dir / kVideoMetaFile);
  if (!meta) throw IoError("cannot write " + (dir / kVideoMetaFile).string());
  meta << "fps=" << FormatExact(video.fps) << " count=" << v.frames() << '\n';
  if (!meta) throw IoError("failed writing video metadata in " + dir.string());
}

VideoVolume ReadPgmSequence(const std::filesystem::path& dir) {
  const auto meta_path = dir / kVideoMetaFile;
  std::ifstream meta(meta_path);
  if (!meta) throw IngestionError("missing video metadata " + meta_path.string());
  std::string line;
  std::getline(meta, line);
  std::istringstream tokens(line);
  double fps = -1.0;
  long count = -1;
  std::string tok;
  while (tokens >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    try {
      if (key == "fps") fps = ParseDouble(value, meta_path.string());
      if (key == "count") count = ParseInt(value, meta_path.string());
    } catch (const ConfigError& e) {
      throw IngestionError(e.what());
    }
  }
  if (!(fps > 0.0)) throw IngestionError(meta_path.string() + ": missing or invalid fps");
  if (count < 1) throw IngestionError(meta_path.string() + ": missing or invalid count");

  std::vector<PgmImage> images;
  std::string failures;
  for (int t = 0; t < count; ++t) {
    const auto path = dir / PgmFrameName(t);
    try {
      images.push_back(ReadPgm(path));
    } catch (const IngestionError& e) {
      failures += std::string("\n  ") + e.what();
    }
  }
  if (!failures.empty()) {
    throw IngestionError("unreadable frames in " + dir.string() + ":" + failures);
  }
  const int h = images.front().height, w = images.front().width;
  VideoVolume video;
  video.fps = fps;
  video.frames = Volume(static_cast<int>(count), h, w);
  for (int t = 0; t < count; ++t) {
    if (images[t].height != h || images[t].width != w) {
      throw IngestionError((dir / PgmFrameName(t)).string() + ": frame size differs from " +
                           PgmFrameName(0));
    }
    std::copy(images[t].pixels.begin(), images[t].pixels.end(),
              video.frames.frame(t).begin());
  }
  return video;
}

void WriteRawVolume(const VideoVolume& video, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const auto& v = video.frames;
  out.write(kRawMagic, sizeof(kRawMagic));
  binary::WriteLE(out, static_cast<std::uint32_t>(v.frames()));
  binary::WriteLE(out, static_cast<std::uint32_t>(v.height()));
  binary::WriteLE(out, static_cast<std::uint32_t>(v.width()));
  binary::WriteLE(out, video.fps);
  std::vector<unsigned char> bytes(v.data().size());
  std::transform(v.data().begin(), v.data().end(), bytes.begin(), ToByte);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

VideoVolume ReadRawVolume(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, sizeof(magic)) ||
      std::string(magic, 8) != std::string(kRawMagic, 8)) {
    throw IngestionError(path.string() + ": not a raw volume file");
  }
  std::uint32_t frames = 0, height = 0, width = 0;
  VideoVolume video;
  if (!binary::ReadLE(in, frames) || !binary::ReadLE(in, height) ||
      !binary::ReadLE(in, width) || !binary::ReadLE(in, video.fps)) {
    throw IngestionError(path.string() + ": truncated header");
  }
  video.frames = Volume(static_cast<int>(frames), static_cast<int>(height),
                        static_cast<int>(width));
  std::vector<unsigned char> bytes(video.frames.data().size());
  if (!in.read(reinterpret_cast<char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()))) {
    throw IngestionError(path.string() + ": truncated pixel data");
  }
  std::transform(bytes.begin(), bytes.end(), video.frames.data().begin(),
                 [](unsigned char b) { return b / 255.0; });
  return video;
}

}  // namespace simrefine
