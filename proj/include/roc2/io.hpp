#pragma once

#include <string>

#include <json.hpp>

#include "roc2/mackey.hpp"
#include "roc2/picard.hpp"
#include "roc2/sseq.hpp"
#include "roc2/tmf13.hpp"

namespace roc2 {

using json = nlohmann::json;

json degree_to_json(const Degree& d);
Degree degree_from_json(const json& j);

json algebra_to_json(const MonomialAlgebra& a);
MonomialAlgebra algebra_from_json(const json& j);

/* Element syntax: integer-coefficient sums of name^exp*... products,
 * e.g. "a_sigma^3*a1bar - 27*a3bar^4". */
Element parse_element(const MonomialAlgebra& a, const std::string& text);

struct SseqSpec {
    MonomialAlgebra algebra;
    std::vector<Differential> differentials;
    Window window;
};
SseqSpec sseq_spec_from_json(const json& j);

json page_to_json(const Page& page, const Window& claim);
json report_to_json(const Report& rep);
json fgab_to_json(const FGAbelianGroup& g);
json mackey_to_json(const MackeyFunctor& m);
json picard_result_to_json(const PicardResult& r);

}  // namespace roc2
