#pragma once

#include "ubdm/coherence.hpp"
#include "ubdm/constants.hpp"
#include "ubdm/counting.hpp"
#include "ubdm/errors.hpp"
#include "ubdm/field.hpp"
#include "ubdm/halo.hpp"
#include "ubdm/lindblad.hpp"
#include "ubdm/markov.hpp"
#include "ubdm/spectral.hpp"
