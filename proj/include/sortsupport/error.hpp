#pragma once

#include <stdexcept>
#include <string>

namespace sortsupport {

// Malformed text input (interval lists, instance files, DIMACS, traces).
class ParseError : public std::runtime_error
{
public:
	explicit ParseError(const std::string& what)
		: std::runtime_error(what)
	{
	}

	ParseError(std::size_t line, const std::string& what)
		: std::runtime_error("line " + std::to_string(line) + ": " + what)
	{
	}
};

// Well-formed input that violates a precondition (empty operand, pin outside
// its domain, unbalanced formula handed to the reduction, ...).
class InputError : public std::invalid_argument
{
public:
	explicit InputError(const std::string& what)
		: std::invalid_argument(what)
	{
	}
};

// A result that contradicts a structural lemma of the reduction. Seeing one
// means the solver or the reduction is wrong, not the input.
class StructureError : public std::logic_error
{
public:
	explicit StructureError(const std::string& what)
		: std::logic_error(what)
	{
	}
};

} // namespace sortsupport
