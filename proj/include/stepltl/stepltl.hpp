#ifndef STEPLTL_STEPLTL_HPP
#define STEPLTL_STEPLTL_HPP

#include "stepltl/buechi.hpp"
#include "stepltl/errors.hpp"
#include "stepltl/eval.hpp"
#include "stepltl/formula.hpp"
#include "stepltl/formula_text.hpp"
#include "stepltl/peano.hpp"
#include "stepltl/presburger.hpp"
#include "stepltl/step_term.hpp"
#include "stepltl/words.hpp"

#endif  // STEPLTL_STEPLTL_HPP
