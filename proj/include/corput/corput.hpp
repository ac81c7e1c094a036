#pragma once

#include "corput/campaign.hpp"
#include "corput/catalog.hpp"
#include "corput/certificates.hpp"
#include "corput/core.hpp"
#include "corput/decay_fit.hpp"
#include "corput/dispersive.hpp"
#include "corput/extrema.hpp"
#include "corput/lemmas.hpp"
#include "corput/quadrature.hpp"
#include "corput/reflect.hpp"
#include "corput/validation.hpp"
