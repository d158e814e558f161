#pragma once
/** @file quiverbench.hpp
 *  Umbrella header.
 */

#include "quiverbench/error.hpp"
#include "quiverbench/finite_field.hpp"
#include "quiverbench/linalg.hpp"
#include "quiverbench/quiver.hpp"
#include "quiverbench/forms.hpp"
#include "quiverbench/species.hpp"
#include "quiverbench/representations.hpp"
#include "quiverbench/hall.hpp"
#include "quiverbench/json_io.hpp"
