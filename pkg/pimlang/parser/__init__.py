from pimlang.parser.lexer import Token, tokenize
from pimlang.parser.parser import load_model, parse, parse_surface
from pimlang.parser.printer import format_model, format_sentence
