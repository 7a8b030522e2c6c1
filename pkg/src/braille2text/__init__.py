"""braille2text: optical braille recognition and keypad braille entry.

Converts scanned braille documents into English, Hindi or Tamil text and
decodes live numeric-keypad braille input, with an HTTP service and CLI on
top of the core pipeline.
"""

__version__ = "0.1.0"
