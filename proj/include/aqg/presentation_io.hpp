#pragma once

#include <memory>
#include <string>

#include "aqg/presentation.hpp"

namespace aqg {

/// Textual presentation format, header "aqg-presentation v1".
///
/// Sections: [basis] (name degree), [unit], [mult], [comult], [star],
/// [antipode], [counit], [integral]; entries are sparse rows using the
/// exact scalar syntax ("p/q", "p/q+r/s*i"). Unspecified entries are zero.
/// The antipode inverse is recovered by inverting the antipode matrix.
/// '#' starts a comment. An optional "check-degree N" line declares the
/// degree the axiom suite should certify before use.
std::shared_ptr<Presentation> load_presentation_text(const std::string& text);
std::shared_ptr<Presentation> load_presentation_file(const std::string& path);

/// Declared check degree of a loaded presentation (max basis degree when
/// the file does not declare one); 0 for other presentations.
int declared_check_degree(const Presentation& p);

/// Serializes a finite presentation (or the degree truncation of a graded
/// one) in the same format. Round-trips exactly for exact scalars.
std::string write_presentation_text(const Presentation& p, int degree);

}  // namespace aqg
