#pragma once

#include "morphgen/error.hpp"
#include "morphgen/featstruct.hpp"
#include "morphgen/grammar_dsl.hpp"
#include "morphgen/transform.hpp"
#include "morphgen/hierarchy.hpp"
#include "morphgen/arabic.hpp"
