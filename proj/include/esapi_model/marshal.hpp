#pragma once

#include "esapi_model/contract.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace esapi_model {

enum class MarshalStatus { success, insufficient_buffer };

/// Store `src` at dest[at..at+4) in big-endian order, one byte per shift and
/// mask, without reinterpreting any storage. Bytes outside that window are
/// left alone.
constexpr void copy_u32(std::uint32_t src, std::span<std::uint8_t> dest, std::size_t at)
{
    require(at <= dest.size() && dest.size() - at >= 4, "copy_u32: destination too small");
    dest[at + 0] = static_cast<std::uint8_t>((src >> 24) & 0xFFu);
    dest[at + 1] = static_cast<std::uint8_t>((src >> 16) & 0xFFu);
    dest[at + 2] = static_cast<std::uint8_t>((src >> 8) & 0xFFu);
    dest[at + 3] = static_cast<std::uint8_t>(src & 0xFFu);
}

/// Append `value` at `offset` and advance it by four. Nothing is written and
/// `offset` is unchanged when the buffer cannot take four more bytes.
constexpr MarshalStatus marshal_u32(std::uint32_t value, std::span<std::uint8_t> dest,
                                    std::size_t& offset)
{
    if (offset > dest.size() || dest.size() - offset < 4)
        return MarshalStatus::insufficient_buffer;
    copy_u32(value, dest, offset);
    offset += 4;
    return MarshalStatus::success;
}

/// Inverse of marshal_u32. nullopt (and `offset` untouched) on a short buffer.
constexpr std::optional<std::uint32_t> unmarshal_u32(std::span<const std::uint8_t> src,
                                                     std::size_t& offset)
{
    if (offset > src.size() || src.size() - offset < 4)
        return std::nullopt;
    std::uint32_t v = 0;
    for (std::size_t k = 0; k < 4; ++k)
        v = (v << 8) | src[offset + k];
    offset += 4;
    return v;
}

} // namespace esapi_model
