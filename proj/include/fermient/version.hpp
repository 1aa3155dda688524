// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace fermient {

#ifdef FERMIENT_VERSION
inline constexpr const char* kVersion = FERMIENT_VERSION;
#else
inline constexpr const char* kVersion = "0.0.0";
#endif

}  // namespace fermient
