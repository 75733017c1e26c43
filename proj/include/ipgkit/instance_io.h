// Copyright 2026 The ipgkit Authors
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

#ifndef IPGKIT_INSTANCE_IO_H_
#define IPGKIT_INSTANCE_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ipgkit/cng.h"
#include "ipgkit/game.h"

namespace ipgkit {

// A parsed instance document. When the "cng" section is present the players
// must be exactly its expansion.
struct InstanceFile {
  GameInstance game;
  std::optional<CngInstance> cng;
};

// Throws ErrorCode::kParse on malformed documents and unknown fields.
InstanceFile parseInstance(std::string_view text);
InstanceFile loadInstance(const std::filesystem::path& path);

// Deterministic two-space indented JSON with a trailing newline.
std::string emitInstance(const GameInstance& game, const std::optional<CngInstance>& cng = std::nullopt);
std::string emitInstance(const CngInstance& cng, const std::string& name);
void saveText(const std::filesystem::path& path, const std::string& text);

bool sameGame(const GameInstance& a, const GameInstance& b);
bool sameCng(const CngInstance& a, const CngInstance& b);

}  // namespace ipgkit

#endif  // IPGKIT_INSTANCE_IO_H_
