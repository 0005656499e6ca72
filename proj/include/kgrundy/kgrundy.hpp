#pragma once

#include <kgrundy/errors.hpp>
#include <kgrundy/graph.hpp>
#include <kgrundy/family.hpp>
#include <kgrundy/io.hpp>
#include <kgrundy/sequence.hpp>
#include <kgrundy/certificate.hpp>
#include <kgrundy/forcing.hpp>
#include <kgrundy/constructions.hpp>
#include <kgrundy/solver.hpp>
#include <kgrundy/lab.hpp>
