// Incremental parser for newline-delimited JSON streams.

export function createNdjsonParser<T>(onFrame: (frame: T) => void): {
  push(chunk: string): void;
  flush(): void;
} {
  let buffer = '';
  const emit = (line: string) => {
    const trimmed = line.trim();
    if (trimmed) onFrame(JSON.parse(trimmed) as T);
  };
  return {
    push(chunk: string) {
      buffer += chunk;
      let index = buffer.indexOf('\n');
      while (index >= 0) {
        emit(buffer.slice(0, index));
        buffer = buffer.slice(index + 1);
        index = buffer.indexOf('\n');
      }
    },
    flush() {
      if (buffer.trim()) emit(buffer);
      buffer = '';
    },
  };
}
