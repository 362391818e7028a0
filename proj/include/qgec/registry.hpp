#pragma once

#include <charconv>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qgec/css_code.hpp"
#include "qgec/decoders.hpp"
#include "qgec/golay.hpp"
#include "qgec/toric.hpp"
#include "qgec/wire.hpp"

namespace qgec {

class UnknownCode : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::string_view kValidCodeIds = "golay:h1, golay:h2, golay:h3, toric:<d> (d >= 2, e.g. toric:5)";

/// A constructed code addressed by its CLI identifier.
class CodeHandle {
 public:
  static CodeHandle load(std::string_view id) {
    CodeHandle h;
    if (id.starts_with("golay:")) {
      golay::Label label;
      try {
        label = golay::parse_label(id.substr(6));
      } catch (const std::invalid_argument&) {
        throw UnknownCode("unknown code id '" + std::string(id) + "'; valid ids: " + std::string(kValidCodeIds));
      }
      h.golay_ = std::make_shared<const CssCode>(golay::build_golay_css(label));
      h.label_ = label;
      return h;
    }
    if (id.starts_with("toric:")) {
      const auto digits = id.substr(6);
      std::size_t d = 0;
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || d < 2) {
        throw UnknownCode("unknown code id '" + std::string(id) + "'; valid ids: " + std::string(kValidCodeIds));
      }
      h.toric_ = std::make_shared<const toric::ToricCode>(toric::build_toric(d));
      return h;
    }
    throw UnknownCode("unknown code id '" + std::string(id) + "'; valid ids: " + std::string(kValidCodeIds));
  }

  const CssCode& code() const { return toric_ ? toric_->code : *golay_; }
  const std::string& id() const { return code().name(); }
  bool is_golay() const noexcept { return golay_ != nullptr; }
  bool is_toric() const noexcept { return toric_ != nullptr; }
  golay::Label golay_label() const { return label_; }
  const toric::ToricCode& toric() const {
    if (!toric_) throw std::logic_error(id() + " is not a toric code");
    return *toric_;
  }

  /// `table` (Golay), `match` (toric) or `external:<command | unix:path | tcp:host:port>`.
  std::unique_ptr<Decoder> make_decoder(std::string_view decoder_id) const {
    if (decoder_id == "table") {
      if (!is_golay()) throw std::invalid_argument("decoder 'table' is only available for golay codes");
      return std::make_unique<TableDecoder>(*golay_);
    }
    if (decoder_id == "match") {
      if (!is_toric()) throw std::invalid_argument("decoder 'match' is only available for toric codes");
      return std::make_unique<MatchDecoder>(*toric_);
    }
    if (decoder_id.starts_with("external:")) {
      return std::make_unique<wire::ExternalDecoder>(code(), std::string(decoder_id.substr(9)));
    }
    throw std::invalid_argument("unknown decoder '" + std::string(decoder_id) +
                                "'; expected table, match or external:<target>");
  }

 private:
  std::shared_ptr<const CssCode> golay_;
  std::shared_ptr<const toric::ToricCode> toric_;
  golay::Label label_ = golay::Label::h1;
};

}  // namespace qgec
