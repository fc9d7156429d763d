#pragma once

#include "amplitude_lab/algebra.hpp"
#include "amplitude_lab/amplitudes.hpp"
#include "amplitude_lab/central.hpp"
#include "amplitude_lab/errors.hpp"
#include "amplitude_lab/forms.hpp"
#include "amplitude_lab/interchange.hpp"
#include "amplitude_lab/linalg.hpp"
#include "amplitude_lab/modular.hpp"
#include "amplitude_lab/parallel.hpp"
#include "amplitude_lab/quasifree.hpp"
#include "amplitude_lab/random.hpp"
#include "amplitude_lab/restriction.hpp"
#include "amplitude_lab/tolerance.hpp"
