#pragma once

#include "fpkit/boundary.hpp"
#include "fpkit/dataset_io.hpp"
#include "fpkit/eval.hpp"
#include "fpkit/geometry.hpp"
#include "fpkit/instruction.hpp"
#include "fpkit/pipeline.hpp"
#include "fpkit/png_io.hpp"
#include "fpkit/seq_codec.hpp"
#include "fpkit/serialization.hpp"
#include "fpkit/solver.hpp"
