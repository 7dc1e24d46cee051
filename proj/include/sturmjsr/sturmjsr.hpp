#pragma once

#include "sturmjsr/binary_word.hpp"
#include "sturmjsr/certification.hpp"
#include "sturmjsr/classify.hpp"
#include "sturmjsr/errors.hpp"
#include "sturmjsr/jsr_engine.hpp"
#include "sturmjsr/matrix_core.hpp"
#include "sturmjsr/projective_dynamics.hpp"
#include "sturmjsr/scalar.hpp"
#include "sturmjsr/staircase.hpp"
#include "sturmjsr/sturmian_words.hpp"
