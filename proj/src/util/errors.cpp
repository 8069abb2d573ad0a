#include "policystory/util/errors.hpp"

#include <exception>

namespace policystory {

void rethrow_with_context(const std::string& context) {
  const std::string prefix = context + ": ";
  try {
    throw;
  } catch (const TransportError& e) {
    throw TransportError(prefix + e.what(), e.status());
  } catch (const PermanentError& e) {
    throw PermanentError(prefix + e.what(), e.status());
  } catch (const ItemTooLargeError& e) {
    throw ItemTooLargeError(prefix + e.what(), e.index());
  } catch (const BudgetError& e) {
    throw BudgetError(prefix + e.what());
  } catch (const DecodeError& e) {
    throw DecodeError(prefix + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(prefix + e.what());
  } catch (const NotFoundError& e) {
    throw NotFoundError(prefix + e.what());
  } catch (const IoError& e) {
    throw IoError(prefix + e.what());
  } catch (const ExtractionError& e) {
    throw ExtractionError(prefix + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(prefix + e.what());
  } catch (const ParseError& e) {
    throw ParseError(prefix + e.what());
  } catch (const Error& e) {
    throw Error(prefix + e.what());
  }
}

}  // namespace policystory
